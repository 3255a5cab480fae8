#ifndef LUMISIM_LIGHTING_HPP
#define LUMISIM_LIGHTING_HPP

#include <span>
#include <string>
#include <vector>

#include "lumisim/geometry.hpp"

namespace lumisim {

// One ceiling LED light block.
struct LuminaireSpec {
    std::string id;
    double x = 0.0;
    double y = 0.0;
    double z = 2.5;              // meters above floor
    double f_full = 5000.0;      // max emitting illumination, luminous units
    double r = 0.02;             // power efficiency factor, W per luminous unit
    double lambertian_order = 1.0;

    double full_power() const { return r * f_full; }
};

// Per-grid-cell attenuation factor h for one luminaire. Values cover every
// grid cell (furniture cells included; desks are still illuminated).
struct AttenuationField {
    std::string luminaire_id;
    std::vector<double> values;  // indexed by flat grid cell

    double at(int cell) const { return values[static_cast<std::size_t>(cell)]; }
};

struct SystemPowerConfig {
    double c_s = 0.0;  // constant overhead power, watts
};

// Environment-illumination sensor on the working surface plane.
struct IlluminationSensorSpec {
    std::string id;
    double x = 0.0;
    double y = 0.0;
};

// Measured per-cell illumination table for one full-on luminaire, as read
// from a calibration CSV.
struct MeasuredIlluminationTable {
    std::string luminaire_id;
    double f_measured = 0.0;       // measured emitting illumination
    std::vector<double> values;    // received illumination per flat grid cell
};

// Path-loss factor from a down-facing luminaire to a surface cell using the
// generalized Lambertian source model, with a flat gain standing in for the
// diffuse reflections of the room.
double lambertian_attenuation(const LuminaireSpec& lum, double cell_x, double cell_y,
                              double surface_height, double reflection_gain);

// Full synthetic field for one luminaire over the grid.
AttenuationField build_lambertian_field(const LuminaireSpec& lum, const RoomLayout& layout,
                                        const GridSpec& grid, double surface_height,
                                        double reflection_gain);

// Field from a measured table: h per cell = received / emitted.
AttenuationField load_measured_attenuation(const MeasuredIlluminationTable& table,
                                           int expected_cells);

// CSV round trip for measured/synthetic tables:
//   # luminaire <id> f_measured <value>
//   row,col,value
std::string measured_table_to_csv(const MeasuredIlluminationTable& table, int cells_x);
MeasuredIlluminationTable measured_table_from_csv(const std::string& csv, int cells_x,
                                                  int cells_y);

// Received illumination at a cell for a dimmer vector sw (one level per
// luminaire, each in [0,1]).
double total_illumination(std::span<const AttenuationField> fields,
                          std::span<const LuminaireSpec> lums,
                          std::span<const double> sw, int cell);

// Index of the illumination sensor nearest to (x, y); ties go to the lowest
// index.
std::size_t nearest_illumination_sensor(std::span<const IlluminationSensorSpec> sensors,
                                        double x, double y);

// Environment illumination at (x, y): the nearest sensor's reading minus the
// modeled LED contribution at that sensor, clamped at zero.
double environment_illumination(std::span<const IlluminationSensorSpec> sensors,
                                std::span<const double> readings,
                                std::span<const AttenuationField> fields,
                                std::span<const LuminaireSpec> lums,
                                std::span<const double> sw, const RoomLayout& layout,
                                const GridSpec& grid, double x, double y);

// Overall system power: overhead plus the affine per-light term.
double system_power(std::span<const LuminaireSpec> lums, std::span<const double> sw,
                    const SystemPowerConfig& cfg);

}  // namespace lumisim

#endif  // LUMISIM_LIGHTING_HPP
