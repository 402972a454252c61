#pragma once

// Polynomial coefficients shared verbatim by the scalar and AVX2 kernels.
// Both evaluate the same Horner chains with the same fma/mul/add sequence,
// which is what makes the two ISAs bitwise-equivalent.

namespace risnc::kernels::detail {

inline constexpr double kLn2 = 0.6931471805599453;
inline constexpr double kSqrtTwo = 1.4142135623730951;
inline constexpr double kTwoPi = 6.283185307179586;

// 2*atanh(t) = 2t * sum_k t^(2k) / (2k+1), |t| <= sqrt(2)-1 over sqrt(2)+1
inline constexpr double kAtanhCoeff[10] = {
    1.0,        1.0 / 3.0,  1.0 / 5.0,  1.0 / 7.0,  1.0 / 9.0,
    1.0 / 11.0, 1.0 / 13.0, 1.0 / 15.0, 1.0 / 17.0, 1.0 / 19.0,
};

// sin(x)/x and cos(x) Taylor coefficients, |x| <= pi/4
inline constexpr double kSinCoeff[8] = {
    1.0,
    -1.0 / 6.0,
    1.0 / 120.0,
    -1.0 / 5040.0,
    1.0 / 362880.0,
    -1.0 / 39916800.0,
    1.0 / 6227020800.0,
    -1.0 / 1307674368000.0,
};

inline constexpr double kCosCoeff[9] = {
    1.0,
    -1.0 / 2.0,
    1.0 / 24.0,
    -1.0 / 720.0,
    1.0 / 40320.0,
    -1.0 / 3628800.0,
    1.0 / 479001600.0,
    -1.0 / 87178291200.0,
    1.0 / 20922789888000.0,
};

// Philox4x32 round and Weyl constants.
inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

} // namespace risnc::kernels::detail
