#pragma once

// Tunable conventions shared across the library. These are documented
// choices, not derived quantities; changing them changes the artifact.
namespace dilwalk::config {

// Korányi gauge: gauge(x,y,z) = ((x^2+y^2)^2 + kGaugeZCoeff * z^2)^{1/4}.
inline constexpr double kGaugeZCoeff = 16.0;

// Chart domain U_eps(x) = ball(x, kChartRadius) in rescaled units,
// image V_eps(x) = ball(x, eps * kChartRadius * (1 + kChartSlack)).
inline constexpr double kChartRadius = 1.0;
inline constexpr double kChartSlack = 0.01;

// Rejection sampling gives up after this many attempts.
inline constexpr long kRejectionCap = 1'000'000;

// Defects below this are treated as exact zeros in log-log fits.
inline constexpr double kExactZero = 1e-13;

// Scale ladder default: 2^0 .. 2^{-kLadderDepth}.
inline constexpr int kLadderDepth = 12;

// Grid space default coordinate window [-kGridWindow, kGridWindow].
inline constexpr double kGridWindow = 2.0;

// Distortion scan: vertical column entries confined to [-B, B]; the
// horizontal block is kept at unit Frobenius norm.
inline constexpr double kVerticalColumnBound = 1.0;

// Budget for coordinate-level rounding in "exact" identity checks. In a
// metric that is alpha-Hoelder in coordinates (Koranyi gauge: alpha = 1/2
// on the vertical axis; snowflake: alpha), a coordinate error e surfaces
// as e^alpha, and inverse dilations amplify e by 1/eps per inverse power.
inline constexpr double kCoordRounding = 1e-13;

inline constexpr int kDefaultPartitionCells = 64;
inline constexpr int kDefaultKernelSamples = 10'000;
inline constexpr int kDefaultPairCount = 100;

}  // namespace dilwalk::config
