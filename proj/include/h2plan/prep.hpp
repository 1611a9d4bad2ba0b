#pragma once

#include <optional>
#include <string>
#include <vector>

namespace h2plan::prep {

/// One hour of reanalysis-style weather input.
struct WeatherSample {
    int hour = 0;               // 1-based
    double wind_speed_50m = 0;  // m/s
    double irradiance = 0;      // W/m^2
    double ambient_temp = 0;    // degC
};

enum class LandClass { Water, Urban, Protected, Grassland, Cropland, Forest, Barren };
enum class SiteUse { Wind, Solar };

std::optional<LandClass> land_class_from_string(const std::string& s);

struct PrepParams {
    double shear_exponent = 1.0 / 7.0;
    double hub_height_m = 100.0;
    double cut_in_ms = 3.0;
    double rated_ms = 11.0;
    double cut_out_ms = 25.0;
    double pv_temp_coeff = -0.0045;   // per degC
    double noct_c = 45.0;
    double stc_irradiance = 1000.0;   // W/m^2
    double indoor_base_c = 18.0;
    double wind_slope_max_deg = 20.0;
    double solar_slope_max_deg = 5.0;
};

/// Power-law vertical profile from 50 m reference height.
double extrapolate_wind_speed(double v50, double hub_height_m,
                              double shear_exponent = 1.0 / 7.0);

/// Three-segment turbine curve: zero below cut-in, cubic ramp to rated,
/// flat to cut-out, zero beyond.
double wind_capacity_factor(double v_hub, const PrepParams& p = {});

/// Cell-temperature-corrected PV output fraction, clamped to [0,1].
double solar_capacity_factor(double irradiance, double ambient_temp,
                             const PrepParams& p = {});

/// HD_t = slope * max(0, base - temp_t) + hot_water_base
std::vector<double> heat_demand_series(const std::vector<double>& temps_c,
                                       double space_slope_mw_per_c, double hot_water_base_mw,
                                       double indoor_base_c = 18.0);

/// Deployment eligibility from slope and land class. Throws on unknown class
/// strings at the parse layer; this overload takes the parsed enum.
bool site_mask(double slope_deg, LandClass land_class, SiteUse use,
               const PrepParams& p = {});

/// Full per-region pipeline: weather samples -> (wind CF, solar CF, heat MW).
struct PrepSeries {
    std::vector<double> wind_cf;
    std::vector<double> solar_cf;
    std::vector<double> heat_demand;
};
PrepSeries prepare_region(const std::vector<WeatherSample>& samples, double space_slope_mw_per_c,
                          double hot_water_base_mw, const PrepParams& p = {});

/// CSV with header `hour,wind_speed_50m,irradiance,ambient_temp`.
std::vector<WeatherSample> read_weather_csv(const std::string& path);

}  // namespace h2plan::prep
