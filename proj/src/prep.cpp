#include "h2plan/prep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace h2plan::prep {

std::optional<LandClass> land_class_from_string(const std::string& s) {
    if (s == "water") return LandClass::Water;
    if (s == "urban") return LandClass::Urban;
    if (s == "protected") return LandClass::Protected;
    if (s == "grassland") return LandClass::Grassland;
    if (s == "cropland") return LandClass::Cropland;
    if (s == "forest") return LandClass::Forest;
    if (s == "barren") return LandClass::Barren;
    return std::nullopt;
}

double extrapolate_wind_speed(double v50, double hub_height_m, double shear_exponent) {
    return v50 * std::pow(hub_height_m / 50.0, shear_exponent);
}

double wind_capacity_factor(double v_hub, const PrepParams& p) {
    if (v_hub < p.cut_in_ms || v_hub > p.cut_out_ms) return 0.0;
    if (v_hub >= p.rated_ms) return 1.0;
    const double v3 = v_hub * v_hub * v_hub;
    const double ci3 = p.cut_in_ms * p.cut_in_ms * p.cut_in_ms;
    const double r3 = p.rated_ms * p.rated_ms * p.rated_ms;
    return (v3 - ci3) / (r3 - ci3);
}

double solar_capacity_factor(double irradiance, double ambient_temp, const PrepParams& p) {
    if (irradiance <= 0.0) return 0.0;
    const double t_cell = ambient_temp + irradiance * (p.noct_c - 20.0) / 800.0;
    const double cf = (irradiance / p.stc_irradiance) * (1.0 + p.pv_temp_coeff * (t_cell - 25.0));
    return std::clamp(cf, 0.0, 1.0);
}

std::vector<double> heat_demand_series(const std::vector<double>& temps_c,
                                       double space_slope_mw_per_c, double hot_water_base_mw,
                                       double indoor_base_c) {
    std::vector<double> out;
    out.reserve(temps_c.size());
    for (double t : temps_c)
        out.push_back(space_slope_mw_per_c * std::max(0.0, indoor_base_c - t) +
                      hot_water_base_mw);
    return out;
}

bool site_mask(double slope_deg, LandClass land_class, SiteUse use, const PrepParams& p) {
    if (land_class == LandClass::Water || land_class == LandClass::Urban ||
        land_class == LandClass::Protected)
        return false;
    const double max_slope =
        use == SiteUse::Wind ? p.wind_slope_max_deg : p.solar_slope_max_deg;
    return slope_deg <= max_slope;
}

PrepSeries prepare_region(const std::vector<WeatherSample>& samples, double space_slope_mw_per_c,
                          double hot_water_base_mw, const PrepParams& p) {
    PrepSeries out;
    out.wind_cf.reserve(samples.size());
    out.solar_cf.reserve(samples.size());
    std::vector<double> temps;
    temps.reserve(samples.size());
    for (const auto& s : samples) {
        const double v_hub = extrapolate_wind_speed(s.wind_speed_50m, p.hub_height_m,
                                                    p.shear_exponent);
        out.wind_cf.push_back(wind_capacity_factor(v_hub, p));
        out.solar_cf.push_back(solar_capacity_factor(s.irradiance, s.ambient_temp, p));
        temps.push_back(s.ambient_temp);
    }
    out.heat_demand =
        heat_demand_series(temps, space_slope_mw_per_c, hot_water_base_mw, p.indoor_base_c);
    return out;
}

std::vector<WeatherSample> read_weather_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weather CSV '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("weather CSV '" + path + "' is empty");
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line != "hour,wind_speed_50m,irradiance,ambient_temp")
        throw std::runtime_error(
            "weather CSV '" + path +
            "' line 1: expected header 'hour,wind_speed_50m,irradiance,ambient_temp'");
    std::vector<WeatherSample> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        WeatherSample s;
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(row >> s.hour >> c1 >> s.wind_speed_50m >> c2 >> s.irradiance >> c3 >>
              s.ambient_temp) ||
            c1 != ',' || c2 != ',' || c3 != ',') {
            throw std::runtime_error("weather CSV '" + path + "' line " +
                                     std::to_string(lineno) + ": malformed row");
        }
        if (s.hour != static_cast<int>(out.size()) + 1)
            throw std::runtime_error("weather CSV '" + path + "' line " +
                                     std::to_string(lineno) +
                                     ": hours must be contiguous starting at 1");
        if (s.wind_speed_50m < 0 || s.irradiance < 0)
            throw std::runtime_error("weather CSV '" + path + "' line " +
                                     std::to_string(lineno) + ": negative wind or irradiance");
        out.push_back(s);
    }
    return out;
}

}  // namespace h2plan::prep
