#pragma once

// Constants shared by the vector exp() implementations. The argument is split
// as x = k*ln2 + r with |r| <= ln2/2 (Cody-Waite, two-part ln2), exp(r) is a
// degree-12 Taylor polynomial (truncation < 2e-16 on that interval), and the
// result is scaled by 2^k. Arguments below kExpMinArg flush to zero.

namespace seqclust::simd::detail::expc {

inline constexpr double kLog2e = 1.4426950408889634074;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kExpMinArg = -708.0;

// 1/k! for k = 12 down to 0, in Horner order.
inline constexpr double kCoeffs[13] = {
    1.0 / 479001600.0,
    1.0 / 39916800.0,
    1.0 / 3628800.0,
    1.0 / 362880.0,
    1.0 / 40320.0,
    1.0 / 5040.0,
    1.0 / 720.0,
    1.0 / 120.0,
    1.0 / 24.0,
    1.0 / 6.0,
    1.0 / 2.0,
    1.0,
    1.0,
};

}  // namespace seqclust::simd::detail::expc
