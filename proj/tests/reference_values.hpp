#pragma once

// Frozen at 30 digits by an independent mpmath computation: root finding on
// the derivative of the interior ratio and of the closed-form g_y norm, then
// direct substitution into the downstream formulas.
namespace reference {

inline constexpr double kK0 = 1.02889394960260411272;
inline constexpr double kI0 = 0.764017547725633159949;
inline constexpr double kYStar = -0.124546795925309803522;
inline constexpr double kIStar = 0.266720395976291954447;
inline constexpr double kInitialSlope = -1.49969783351534505277;
inline constexpr double kSupportDisplay = 2.44120989055074648589;
inline constexpr double kSupportRecursion = 2.45792224223866641896;
inline constexpr double kFirstKnotValue = 0.470688620235576974095;  // 1 - k0^2 / 2

inline constexpr double kModulusAtUnitDelta = 1.69659236829492833999;  // I*^{-2/5}
inline constexpr double kKernelAmplitude = 1.74515098585233781109;    // also the risk at sigma = C = 1
inline constexpr double kKernelTimeRescale = 0.581834202481189774289;
inline constexpr double kRdKernelAmplitude = 2.00465206667003435570;
inline constexpr double kRdKernelTimeRescale = 0.668351991271154477714;
inline constexpr double kRdModulusAtUnitDelta = 2.57155315923973355000;
inline constexpr double kRdRisk = 4.00930413334006871139;
inline constexpr double kNormAtB2 = 1.50879840540477748642;  // 2^{5/2} I*

}  // namespace reference
