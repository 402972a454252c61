#pragma once

// Frozen expected values, computed with a 40-digit arbitrary-precision
// evaluation of the closed forms and integrals before the implementation
// was written. The tests recompute the integral-valued entries with the
// independent order-256 Gauss-Legendre oracle as a second opinion.

namespace ref {

// Gaussian tail
inline constexpr double kQ1 = 0.15865525393145705141;
inline constexpr double kQ3 = 0.0013498980316300945267;
inline constexpr double kQ8 = 6.2209605742717841235e-16;
inline constexpr double kPiQ1 = 0.49843018020448863433; // pi * Q(1)

// AWGN relay, ps1=2 ps2=1 n0=1
inline constexpr double kAwgnOuter21 = 0.15859077152907258588;
inline constexpr double kAwgnInner21 = 0.19239799071373415342;
inline constexpr double kAwgnExact21 = 0.17549438112140336965;

// AWGN relay, ps1=ps2=1 n0=1
inline constexpr double kAwgnOuter11 = 0.15730535589982695689;
inline constexpr double kAwgnInner11 = 0.31731050786291410283;
inline constexpr double kAwgnExact11 = 0.23730793188137052986;

// joint MGF, n1=n2=8, snr1=snr2=1, s=-0.1
inline constexpr double kMgfBranchCorrected = 0.10815014767837627111;
inline constexpr double kMgfProductCorrected = 0.011696454442854596345;
inline constexpr double kMgfProductPrinted = 62.276850863942545174;
inline constexpr double kMgfProductDerived = 0.099913077473830909281;
inline constexpr double kMgfBranchDerivedS001 = 0.87629373825665221394; // s=-0.01
inline constexpr double kMgfBranchDerivedS1 = 0.0059454091560318772252; // s=-1

// relay fading, ps1=2 ps2=1 n0=1 (snr1=2, snr2=1)
inline constexpr double kFadingApproxCorrectedN8 = 5.0028384046225310216e-9;
inline constexpr double kFadingApproxCorrectedN16 = 3.0004398982654268884e-20;
inline constexpr double kFadingUpperCorrectedN8 = 2.4724971351948243885e-8;
inline constexpr double kFadingExactCorrectedN8 = 5.0046058250269057745e-9;
inline constexpr double kFadingApproxDerivedN8 = 2.0275407363179470585e-5;
inline constexpr double kFadingApproxDerivedN16 = 3.6075713510091017025e-11;
inline constexpr double kFadingUpperDerivedN8 = 7.4174165332216733386e-5;
inline constexpr double kFadingExactDerivedN8 = 2.0535363906786224434e-5;
inline constexpr double kFadingIntegrandPiHalfCorrectedN8 = 4.944994270389648777e-8;

// high-SNR relative gap between exact and approx, n0=1e-3: the correction
// terms scale like Pg1/Pg_i, so the gap saturates near 0.188 instead of
// vanishing
inline constexpr double kFadingHighSnrGapCorrected = 0.1857999952;

// per-link BER, NA=4, P=2, n0=1
inline constexpr double kLinkBound = 0.00081982695448638129082;
inline constexpr double kLinkIntegral = 0.00036000921178472232999;

// overall D1, ps1=2 ps2=1 pr=2 n1=n2=n3=8 n0=1
inline constexpr double kOverallD1BoundCorrected = 0.00081982695858929204276;
inline constexpr double kOverallD1IntegralCorrected = 0.00036000921358642652835;
inline constexpr double kOverallD1BoundDerived = 0.00081984378993123226093;
inline constexpr double kOverallD1IntegralDerived = 0.00036001660470489612454;

// BPSK over Rayleigh closed form at mean SNR 1: 0.5 * (1 - sqrt(1/2))
inline constexpr double kRayleighBpskGbar1 = 0.1464466094067262378;

// sum of 4 unit-power Rayleigh magnitudes
inline constexpr double kSumAlphaMeanN8 = 3.5449077018110320546; // 4 * sqrt(pi)/2
inline constexpr double kSumAlphaVarN8 = 0.85840734641020676153; // 4 * (4-pi)/4

} // namespace ref
