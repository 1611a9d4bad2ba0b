#pragma once

#include <cmath>

// Canonical internal units used across the library:
//   power MW, energy MWh, hydrogen mass kg, money USD, time = hour index 1..T.
// Loaders convert table-style units ($/kW, kWh, %) at the boundary so the
// model code never mixes scales.

namespace h2plan::units {

inline constexpr double kKwPerMw = 1000.0;
inline constexpr double kKwhPerMwh = 1000.0;
inline constexpr double kMjPerMwh = 3600.0;
inline constexpr double kMwhPerGwh = 1000.0;

/// Default lower heating value of hydrogen, MJ/kg. Configurable per scenario.
inline constexpr double kDefaultLhvMjPerKg = 120.0;

/// Bundled CNY->USD conversion used when ingesting CNY-denominated inputs.
inline constexpr double kDefaultCnyPerUsd = 6.8;

inline double usd_per_kw_to_usd_per_mw(double v) { return v * kKwPerMw; }
inline double usd_per_kwh_to_usd_per_mwh(double v) { return v * kKwhPerMwh; }
inline double kwh_per_kg_to_mwh_per_kg(double v) { return v / kKwhPerMwh; }
inline double kg_to_mwh(double kg, double lhv_mj_per_kg) {
    return kg * lhv_mj_per_kg / kMjPerMwh;
}

}  // namespace h2plan::units
