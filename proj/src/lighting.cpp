#include "lumisim/lighting.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lumisim {

double lambertian_attenuation(const LuminaireSpec& lum, double cell_x, double cell_y,
                              double surface_height, double reflection_gain) {
    const double dz = lum.z - surface_height;
    if (!(dz > 0.0)) {
        throw std::invalid_argument("lambertian_attenuation: luminaire below working surface");
    }
    if (reflection_gain < 0.0) {
        throw std::invalid_argument("lambertian_attenuation: negative reflection gain");
    }
    const double dx = cell_x - lum.x;
    const double dy = cell_y - lum.y;
    const double d2 = dx * dx + dy * dy + dz * dz;
    const double d = std::sqrt(d2);
    // Down-facing source over a horizontal surface: emission and incidence
    // angles coincide, cos = dz / d.
    const double cos_angle = dz / d;
    const double m = lum.lambertian_order;
    const double direct = ((m + 1.0) / (2.0 * M_PI)) * std::pow(cos_angle, m) * cos_angle / d2;
    return direct * (1.0 + reflection_gain);
}

AttenuationField build_lambertian_field(const LuminaireSpec& lum, const RoomLayout& layout,
                                        const GridSpec& grid, double surface_height,
                                        double reflection_gain) {
    AttenuationField field;
    field.luminaire_id = lum.id;
    const int n = grid.cell_count(layout);
    field.values.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        double x = 0.0, y = 0.0;
        grid.cell_center(layout, c, x, y);
        field.values[static_cast<std::size_t>(c)] =
            lambertian_attenuation(lum, x, y, surface_height, reflection_gain);
    }
    return field;
}

AttenuationField load_measured_attenuation(const MeasuredIlluminationTable& table,
                                           int expected_cells) {
    if (!(table.f_measured > 0.0)) {
        throw std::invalid_argument("measured attenuation: f_measured must be > 0");
    }
    if (static_cast<int>(table.values.size()) != expected_cells) {
        throw std::invalid_argument("measured attenuation: table does not cover all cells");
    }
    AttenuationField field;
    field.luminaire_id = table.luminaire_id;
    field.values.reserve(table.values.size());
    for (double v : table.values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("measured attenuation: negative or non-finite reading");
        }
        field.values.push_back(v / table.f_measured);
    }
    return field;
}

std::string measured_table_to_csv(const MeasuredIlluminationTable& table, int cells_x) {
    std::ostringstream out;
    out.precision(17);
    out << "# luminaire " << table.luminaire_id << " f_measured " << table.f_measured << "\n";
    out << "row,col,value\n";
    for (std::size_t c = 0; c < table.values.size(); ++c) {
        const int row = static_cast<int>(c) / cells_x;
        const int col = static_cast<int>(c) % cells_x;
        out << row << "," << col << "," << table.values[c] << "\n";
    }
    return out.str();
}

MeasuredIlluminationTable measured_table_from_csv(const std::string& csv, int cells_x,
                                                  int cells_y) {
    MeasuredIlluminationTable table;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# luminaire ", 0) != 0) {
        throw std::runtime_error("attenuation csv: missing '# luminaire' header");
    }
    {
        std::istringstream hdr(line.substr(2));
        std::string kw_lum, kw_f;
        hdr >> kw_lum >> table.luminaire_id >> kw_f >> table.f_measured;
        if (kw_lum != "luminaire" || kw_f != "f_measured" || hdr.fail()) {
            throw std::runtime_error("attenuation csv: malformed header line");
        }
    }
    if (!std::getline(in, line) || line != "row,col,value") {
        throw std::runtime_error("attenuation csv: missing 'row,col,value' header");
    }
    table.values.assign(static_cast<std::size_t>(cells_x) * cells_y,
                        std::numeric_limits<double>::quiet_NaN());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        int r = 0, c = 0;
        char comma1 = 0, comma2 = 0;
        double v = 0.0;
        row >> r >> comma1 >> c >> comma2 >> v;
        if (row.fail() || comma1 != ',' || comma2 != ',') {
            throw std::runtime_error("attenuation csv: malformed data row: " + line);
        }
        if (r < 0 || r >= cells_y || c < 0 || c >= cells_x) {
            throw std::runtime_error("attenuation csv: cell out of range: " + line);
        }
        table.values[static_cast<std::size_t>(r) * cells_x + c] = v;
    }
    for (double v : table.values) {
        if (std::isnan(v)) {
            throw std::runtime_error("attenuation csv: table does not cover all cells");
        }
    }
    return table;
}

double total_illumination(std::span<const AttenuationField> fields,
                          std::span<const LuminaireSpec> lums,
                          std::span<const double> sw, int cell) {
    if (fields.size() != lums.size() || sw.size() != lums.size()) {
        throw std::invalid_argument("total_illumination: dimension mismatch");
    }
    double sum = 0.0;
    for (std::size_t l = 0; l < lums.size(); ++l) {
        sum += sw[l] * lums[l].f_full * fields[l].at(cell);
    }
    return sum;
}

std::size_t nearest_illumination_sensor(std::span<const IlluminationSensorSpec> sensors,
                                        double x, double y) {
    if (sensors.empty()) {
        throw std::invalid_argument("environment illumination: no illumination sensors");
    }
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < sensors.size(); ++s) {
        const double dx = sensors[s].x - x;
        const double dy = sensors[s].y - y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = s;
        }
    }
    return best;
}

double environment_illumination(std::span<const IlluminationSensorSpec> sensors,
                                std::span<const double> readings,
                                std::span<const AttenuationField> fields,
                                std::span<const LuminaireSpec> lums,
                                std::span<const double> sw, const RoomLayout& layout,
                                const GridSpec& grid, double x, double y) {
    if (readings.size() != sensors.size()) {
        throw std::invalid_argument("environment illumination: readings/sensors mismatch");
    }
    const std::size_t n = nearest_illumination_sensor(sensors, x, y);
    const int cell = grid.cell_of(layout, sensors[n].x, sensors[n].y);
    const double led = total_illumination(fields, lums, sw, cell);
    const double en = readings[n] - led;
    return en > 0.0 ? en : 0.0;
}

double system_power(std::span<const LuminaireSpec> lums, std::span<const double> sw,
                    const SystemPowerConfig& cfg) {
    if (sw.size() != lums.size()) {
        throw std::invalid_argument("system_power: dimension mismatch");
    }
    double power = cfg.c_s;
    for (std::size_t l = 0; l < lums.size(); ++l) {
        power += lums[l].r * sw[l] * lums[l].f_full;
    }
    return power;
}

}  // namespace lumisim
