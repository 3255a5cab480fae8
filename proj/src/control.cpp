#include "lumisim/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lumisim {

namespace {

struct CellNeed {
    int cell = 0;
    double need = 0.0;  // required LED-only illumination, margin included
};

// Positions whose requirement is not already met by the environment.
std::vector<CellNeed> gather_needs(const EnvLookup& env_at,
                                   std::span<const RequirementSpec> reqs,
                                   const ControlOptions& options) {
    std::vector<CellNeed> needs;
    for (const RequirementSpec& req : reqs) {
        if (!(req.f_min > 0.0)) {
            throw std::invalid_argument("requirement: f_min must be > 0");
        }
        for (int cell : req.region_cells) {
            const double residual = req.f_min_at(cell) - env_at(cell);
            if (residual > 0.0) {
                needs.push_back({cell, residual + options.margin_lux});
            }
        }
    }
    return needs;
}

// contrib[c][l] = illumination delivered at need c by light l at full level.
std::vector<std::vector<double>> contribution_matrix(std::span<const LuminaireSpec> lums,
                                                     std::span<const AttenuationField> fields,
                                                     const std::vector<CellNeed>& needs) {
    std::vector<std::vector<double>> contrib(needs.size(), std::vector<double>(lums.size()));
    for (std::size_t c = 0; c < needs.size(); ++c) {
        for (std::size_t l = 0; l < lums.size(); ++l) {
            contrib[c][l] = lums[l].f_full * fields[l].at(needs[c].cell);
        }
    }
    return contrib;
}

bool satisfies(const std::vector<CellNeed>& needs,
               const std::vector<std::vector<double>>& contrib,
               const std::vector<double>& sw, double tol) {
    for (std::size_t c = 0; c < needs.size(); ++c) {
        double led = 0.0;
        for (std::size_t l = 0; l < sw.size(); ++l) led += sw[l] * contrib[c][l];
        if (led < needs[c].need - tol) return false;
    }
    return true;
}

ControlCommand make_command(std::span<const LuminaireSpec> lums,
                            const SystemPowerConfig& cfg, std::vector<double> sw,
                            bool feasible) {
    ControlCommand cmd;
    cmd.sw = std::move(sw);
    cmd.power = system_power(lums, cmd.sw, cfg);
    cmd.feasible = feasible;
    return cmd;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// ---------------------------------------------------------------------------
// Dense two-phase simplex with Bland's rule, for the dimmer relaxation.
// Variables are nonnegative; rows are either a.x >= b or a.x <= b.
// ---------------------------------------------------------------------------

struct LpRow {
    std::vector<double> a;
    double b = 0.0;
};

struct LpResult {
    bool feasible = false;
    std::vector<double> x;
};

class Simplex {
public:
    Simplex(std::size_t n_vars, const std::vector<LpRow>& ge_rows,
            const std::vector<LpRow>& le_rows)
        : n_(n_vars),
          m_ge_(ge_rows.size()),
          m_le_(le_rows.size()),
          m_(m_ge_ + m_le_),
          cols_(n_vars + ge_rows.size() + le_rows.size() + ge_rows.size()),
          tab_(m_, std::vector<double>(cols_ + 1, 0.0)),
          basis_(m_, 0) {
        // Column layout: x | surplus (>= rows) | slack (<= rows) | artificial.
        for (std::size_t i = 0; i < m_ge_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = ge_rows[i].a[j];
            tab_[i][n_ + i] = -1.0;
            tab_[i][n_ + m_ge_ + m_le_ + i] = 1.0;
            tab_[i][cols_] = ge_rows[i].b;
            basis_[i] = n_ + m_ge_ + m_le_ + i;
        }
        for (std::size_t i = 0; i < m_le_; ++i) {
            const std::size_t r = m_ge_ + i;
            for (std::size_t j = 0; j < n_; ++j) tab_[r][j] = le_rows[i].a[j];
            tab_[r][n_ + m_ge_ + i] = 1.0;
            tab_[r][cols_] = le_rows[i].b;
            basis_[r] = n_ + m_ge_ + i;
        }
    }

    LpResult minimize(const std::vector<double>& cost) {
        LpResult result;

        // Phase 1: drive the artificials to zero.
        std::vector<double> phase1(cols_, 0.0);
        for (std::size_t i = 0; i < m_ge_; ++i) phase1[n_ + m_ge_ + m_le_ + i] = 1.0;
        if (!run_phase(phase1, /*bar_artificials=*/false)) return result;
        double infeas = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (is_artificial(basis_[i])) infeas += tab_[i][cols_];
        }
        if (infeas > 1e-7) return result;
        pivot_out_artificials();

        // Phase 2: original objective, artificial columns barred.
        std::vector<double> phase2(cols_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) phase2[j] = cost[j];
        if (!run_phase(phase2, /*bar_artificials=*/true)) return result;

        result.feasible = true;
        result.x.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) result.x[basis_[i]] = tab_[i][cols_];
        }
        return result;
    }

private:
    bool is_artificial(std::size_t j) const { return j >= n_ + m_ge_ + m_le_; }

    // Reduced-cost simplex loop; returns false only on unbounded descent.
    bool run_phase(const std::vector<double>& cost, bool bar_artificials) {
        constexpr double kEps = 1e-9;
        for (std::size_t iter = 0; iter < 20000; ++iter) {
            // Reduced costs from the current basis (Bland: lowest index wins).
            std::size_t entering = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (bar_artificials && is_artificial(j)) continue;
                double rc = cost[j];
                for (std::size_t i = 0; i < m_; ++i) {
                    const double cb = cost[basis_[i]];
                    if (cb != 0.0) rc -= cb * tab_[i][j];
                }
                if (rc < -kEps) {
                    entering = j;
                    break;
                }
            }
            if (entering == cols_) return true;  // optimal

            std::size_t leaving = m_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (tab_[i][entering] > kEps) {
                    const double ratio = tab_[i][cols_] / tab_[i][entering];
                    if (ratio < best_ratio - kEps ||
                        (ratio < best_ratio + kEps &&
                         (leaving == m_ || basis_[i] < basis_[leaving]))) {
                        best_ratio = ratio;
                        leaving = i;
                    }
                }
            }
            if (leaving == m_) return false;  // unbounded
            pivot(leaving, entering);
        }
        return false;
    }

    void pivot(std::size_t row, std::size_t col) {
        const double p = tab_[row][col];
        for (double& v : tab_[row]) v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double f = tab_[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    void pivot_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!is_artificial(basis_[i])) continue;
            for (std::size_t j = 0; j < n_ + m_ge_ + m_le_; ++j) {
                if (std::abs(tab_[i][j]) > 1e-7) {
                    pivot(i, j);
                    break;
                }
            }
            // A row with no eligible pivot is redundant; its artificial stays
            // basic at zero and is barred from re-entering in phase 2.
        }
    }

    std::size_t n_, m_ge_, m_le_, m_, cols_;
    std::vector<std::vector<double>> tab_;
    std::vector<std::size_t> basis_;
};

LpResult solve_lp(std::size_t n_vars, const std::vector<LpRow>& ge_rows,
                  const std::vector<LpRow>& le_rows, const std::vector<double>& cost) {
    Simplex simplex(n_vars, ge_rows, le_rows);
    return simplex.minimize(cost);
}

}  // namespace

ControlCommand optimize_onoff(std::span<const LuminaireSpec> lums,
                              std::span<const AttenuationField> fields,
                              const EnvLookup& env_at,
                              std::span<const RequirementSpec> reqs,
                              const SystemPowerConfig& cfg, OnOffMode mode,
                              const ControlOptions& options) {
    const std::size_t n = lums.size();
    if (fields.size() != n) {
        throw std::invalid_argument("optimize_onoff: fields/luminaires mismatch");
    }
    if (mode == OnOffMode::exhaustive && n > 20) {
        throw std::invalid_argument("optimize_onoff: exhaustive mode limited to 20 lights");
    }

    const std::vector<CellNeed> needs = gather_needs(env_at, reqs, options);
    if (needs.empty()) {
        return make_command(lums, cfg, std::vector<double>(n, 0.0), true);
    }
    const auto contrib = contribution_matrix(lums, fields, needs);

    if (mode == OnOffMode::exhaustive) {
        bool found = false;
        double best_power = 0.0;
        std::vector<double> best_sw;
        std::vector<double> sw(n, 0.0);
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            for (std::size_t l = 0; l < n; ++l) sw[l] = (mask >> l) & 1u ? 1.0 : 0.0;
            if (!satisfies(needs, contrib, sw, options.feasibility_tol)) continue;
            const double power = system_power(lums, sw, cfg);
            if (!found || power < best_power - 1e-9 ||
                (power < best_power + 1e-9 && lex_less(sw, best_sw))) {
                found = true;
                best_power = power;
                best_sw = sw;
            }
        }
        if (!found) {
            return make_command(lums, cfg, std::vector<double>(n, 1.0), false);
        }
        return make_command(lums, cfg, std::move(best_sw), true);
    }

    // Greedy: best violation-reduction per watt until every need is met.
    std::vector<double> sw(n, 0.0);
    std::vector<double> current(needs.size(), 0.0);
    for (std::size_t round = 0; round < n; ++round) {
        double worst_deficit = 0.0;
        for (std::size_t c = 0; c < needs.size(); ++c) {
            worst_deficit = std::max(worst_deficit, needs[c].need - current[c]);
        }
        if (worst_deficit <= options.feasibility_tol) break;

        std::size_t best_light = n;
        double best_ratio = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            if (sw[l] > 0.0) continue;
            double reduction = 0.0;
            for (std::size_t c = 0; c < needs.size(); ++c) {
                const double deficit = needs[c].need - current[c];
                if (deficit > 0.0) reduction += std::min(deficit, contrib[c][l]);
            }
            if (reduction <= 0.0) continue;
            const double ratio = reduction / lums[l].full_power();
            if (best_light == n || ratio > best_ratio) {
                best_light = l;
                best_ratio = ratio;
            }
        }
        if (best_light == n) {
            // No remaining light helps, so the full system cannot either.
            return make_command(lums, cfg, std::vector<double>(n, 1.0), false);
        }
        sw[best_light] = 1.0;
        for (std::size_t c = 0; c < needs.size(); ++c) current[c] += contrib[c][best_light];
    }
    if (!satisfies(needs, contrib, sw, options.feasibility_tol)) {
        return make_command(lums, cfg, std::vector<double>(n, 1.0), false);
    }

    // Local descent on the greedy pick: drop redundant lights, swap one
    // on-light for a cheaper off-light, and collapse two on-lights into one.
    // Each move strictly lowers power, so the loop terminates.
    bool improved = true;
    while (improved) {
        improved = false;

        for (std::size_t l = 0; l < n && !improved; ++l) {
            if (sw[l] == 0.0) continue;
            sw[l] = 0.0;
            if (satisfies(needs, contrib, sw, options.feasibility_tol)) {
                improved = true;
            } else {
                sw[l] = 1.0;
            }
        }
        if (improved) continue;

        for (std::size_t a = 0; a < n && !improved; ++a) {
            if (sw[a] == 0.0) continue;
            for (std::size_t c = 0; c < n && !improved; ++c) {
                if (sw[c] == 1.0 || lums[c].full_power() >= lums[a].full_power() - 1e-9) {
                    continue;
                }
                sw[a] = 0.0;
                sw[c] = 1.0;
                if (satisfies(needs, contrib, sw, options.feasibility_tol)) {
                    improved = true;
                } else {
                    sw[a] = 1.0;
                    sw[c] = 0.0;
                }
            }
        }
        if (improved) continue;

        for (std::size_t a = 0; a < n && !improved; ++a) {
            if (sw[a] == 0.0) continue;
            for (std::size_t b = a + 1; b < n && !improved; ++b) {
                if (sw[b] == 0.0) continue;
                for (std::size_t c = 0; c < n && !improved; ++c) {
                    if (sw[c] == 1.0 ||
                        lums[c].full_power() >=
                            lums[a].full_power() + lums[b].full_power() - 1e-9) {
                        continue;
                    }
                    sw[a] = 0.0;
                    sw[b] = 0.0;
                    sw[c] = 1.0;
                    if (satisfies(needs, contrib, sw, options.feasibility_tol)) {
                        improved = true;
                    } else {
                        sw[a] = 1.0;
                        sw[b] = 1.0;
                        sw[c] = 0.0;
                    }
                }
            }
        }
    }
    return make_command(lums, cfg, std::move(sw), true);
}

ControlCommand optimize_dimmer(std::span<const LuminaireSpec> lums,
                               std::span<const AttenuationField> fields,
                               const EnvLookup& env_at,
                               std::span<const RequirementSpec> reqs,
                               const SystemPowerConfig& cfg,
                               const ControlOptions& options) {
    const std::size_t n = lums.size();
    if (fields.size() != n) {
        throw std::invalid_argument("optimize_dimmer: fields/luminaires mismatch");
    }

    const std::vector<CellNeed> needs = gather_needs(env_at, reqs, options);
    if (needs.empty()) {
        return make_command(lums, cfg, std::vector<double>(n, 0.0), true);
    }
    const auto contrib = contribution_matrix(lums, fields, needs);

    std::vector<LpRow> ge_rows;
    ge_rows.reserve(needs.size());
    for (std::size_t c = 0; c < needs.size(); ++c) {
        ge_rows.push_back({contrib[c], needs[c].need});
    }
    std::vector<LpRow> le_rows;
    for (std::size_t l = 0; l < n; ++l) {
        LpRow ub;
        ub.a.assign(n, 0.0);
        ub.a[l] = 1.0;
        ub.b = 1.0;
        le_rows.push_back(std::move(ub));
    }
    std::vector<double> cost(n);
    for (std::size_t l = 0; l < n; ++l) cost[l] = lums[l].full_power();

    LpResult base = solve_lp(n, ge_rows, le_rows, cost);
    if (!base.feasible) {
        return make_command(lums, cfg, std::vector<double>(n, 1.0), false);
    }
    double opt_cost = 0.0;
    for (std::size_t l = 0; l < n; ++l) opt_cost += cost[l] * base.x[l];

    // Lexicographic refinement among minimum-power solutions: cap the power,
    // then minimize each coordinate in turn with earlier coordinates capped.
    std::vector<LpRow> refine_le = le_rows;
    {
        LpRow cap;
        cap.a = cost;
        cap.b = opt_cost + 1e-6 * (1.0 + std::abs(opt_cost));
        refine_le.push_back(std::move(cap));
    }
    std::vector<double> sw = base.x;
    for (std::size_t l = 0; l < n; ++l) {
        std::vector<double> unit(n, 0.0);
        unit[l] = 1.0;
        LpResult step = solve_lp(n, ge_rows, refine_le, unit);
        if (!step.feasible) break;  // numerical trouble: keep the base optimum
        sw = step.x;
        LpRow pin;
        pin.a = unit;
        pin.b = sw[l] + 1e-9;
        refine_le.push_back(std::move(pin));
    }

    for (double& v : sw) v = std::clamp(v, 0.0, 1.0);
    const double check_tol = 1e-6;
    for (std::size_t c = 0; c < needs.size(); ++c) {
        double led = 0.0;
        for (std::size_t l = 0; l < n; ++l) led += sw[l] * contrib[c][l];
        if (led < needs[c].need - check_tol * (1.0 + needs[c].need)) {
            return make_command(lums, cfg, std::vector<double>(n, 1.0), false);
        }
    }
    return make_command(lums, cfg, std::move(sw), true);
}

ControlCommand batch_control(std::span<const LuminaireSpec> lums,
                             const SystemPowerConfig& cfg,
                             std::optional<double> seconds_since_any_detection,
                             double delay_seconds) {
    const bool on =
        seconds_since_any_detection && *seconds_since_any_detection <= delay_seconds;
    return make_command(lums, cfg, std::vector<double>(lums.size(), on ? 1.0 : 0.0), true);
}

ControlCommand individual_control(std::span<const LuminaireSpec> lums,
                                  const SystemPowerConfig& cfg,
                                  std::span<const std::optional<double>> seconds_since_detection,
                                  double delay_seconds) {
    if (seconds_since_detection.size() != lums.size()) {
        throw std::invalid_argument("individual_control: missing light/sensor pairing");
    }
    std::vector<double> sw(lums.size(), 0.0);
    for (std::size_t l = 0; l < lums.size(); ++l) {
        const auto& age = seconds_since_detection[l];
        sw[l] = (age && *age <= delay_seconds) ? 1.0 : 0.0;
    }
    return make_command(lums, cfg, std::move(sw), true);
}

ControlCommand perfect_localization_control(std::span<const LuminaireSpec> lums,
                                            std::span<const AttenuationField> fields,
                                            const EnvLookup& env_at, int true_cell,
                                            double f_min, const SystemPowerConfig& cfg,
                                            OnOffMode mode, const ControlOptions& options) {
    RequirementSpec req;
    req.f_min = f_min;
    req.region_cells = {true_cell};
    const RequirementSpec reqs[] = {req};
    return optimize_onoff(lums, fields, env_at, reqs, cfg, mode, options);
}

}  // namespace lumisim
