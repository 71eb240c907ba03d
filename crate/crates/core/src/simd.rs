//! Run-time selection of wider vector code.

/// Defines `$name` to call the `#[inline(always)]` method `$body`, routed
/// through a copy compiled for wider vectors when the CPU supports them.
/// Fused multiply-add stays disabled, so every path produces identical
/// results.
macro_rules! wide_dispatch {
    ($features:tt, $detect:tt, $ty_self:ty: $(#[$meta:meta])* $vis:vis fn $name:ident => $body:ident(&self $(, $arg:ident: $ty:ty)*)) => {
        $(#[$meta])*
        $vis fn $name(&self $(, $arg: $ty)*) {
            #[cfg(target_arch = "x86_64")]
            {
                #[target_feature(enable = $features)]
                fn wide(this: &$ty_self $(, $arg: $ty)*) {
                    this.$body($($arg),*)
                }
                if std::arch::is_x86_feature_detected!($detect) {
                    // SAFETY: the feature was detected at run time.
                    return unsafe { wide(self $(, $arg)*) };
                }
            }
            self.$body($($arg),*)
        }
    };
}

macro_rules! avx2_dispatch {
    ($($t:tt)*) => { crate::simd::wide_dispatch!("avx2", "avx2", $($t)*); };
}

pub(crate) use {avx2_dispatch, wide_dispatch};
