// sweep.hpp — full pipeline evaluation (params -> CM -> measures) over 1-D and
// 2-D parameter grids, and the figure presets built on top of it.

#pragma once

#include "magnonics/errors.hpp"
#include "magnonics/format.hpp"
#include "magnonics/measures.hpp"
#include "magnonics/model.hpp"
#include "magnonics/steady_state.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace magnonics {

// ---------------------------------------------------------------------------
// Single operating point

struct PointReport {
    CovarianceMatrix cm;
    std::array<double, 6> variances{};
    double squeezing_db_x1 = 0.0;
    BipartiteReport magnons;       // (o1, o2)
    BipartiteReport cavity_o1;     // (d, o1)
    BipartiteReport cavity_o2;     // (d, o2)
    TripartiteReport tripartite;
};

// nullopt when the drift matrix is unstable.
inline std::optional<PointReport> evaluate_point(const SystemParams& p) {
    const DriftMatrix u = build_drift(p);
    if (!is_stable(u)) return std::nullopt;

    PointReport rep;
    rep.cm = solve_lyapunov(u, build_diffusion(p));
    for (int i = 0; i < 6; ++i) rep.variances[static_cast<std::size_t>(i)] = quadrature_variance(rep.cm, i);
    rep.squeezing_db_x1 = squeezing_db(rep.variances[2]);
    rep.magnons = bipartite_report(rep.cm, Mode::magnon1, Mode::magnon2);
    rep.cavity_o1 = bipartite_report(rep.cm, Mode::cavity, Mode::magnon1);
    rep.cavity_o2 = bipartite_report(rep.cm, Mode::cavity, Mode::magnon2);
    rep.tripartite = residual_contangle(rep.cm);
    return rep;
}

// ---------------------------------------------------------------------------
// Axes

enum class SweepParam { delta_d, delta_o, lambda, r, temperature_mk, g, n_o };

inline constexpr std::array<std::string_view, 7> kSweepParamNames{
    "delta_d", "delta_o", "lambda", "r", "temperature_mk", "g", "n_o"};

inline std::string_view to_string(SweepParam p) { return kSweepParamNames[static_cast<std::size_t>(p)]; }

inline SweepParam parse_sweep_param(std::string_view name) {
    for (std::size_t i = 0; i < kSweepParamNames.size(); ++i)
        if (kSweepParamNames[i] == name) return static_cast<SweepParam>(i);
    throw ConfigError("unknown sweep parameter '" + std::string(name) + "'");
}

inline bool is_non_negative(SweepParam p) { return p != SweepParam::delta_d && p != SweepParam::delta_o; }

struct SweepAxis {
    SweepParam param = SweepParam::lambda;
    double start = 0.0;
    double stop = 1.0;
    int count = 2;

    void validate() const {
        if (count < 2) throw ConfigError("sweep axis: count must be >= 2");
        if (!(start < stop)) throw ConfigError("sweep axis: start must be < stop");
        if (is_non_negative(param) && start < 0) {
            throw ConfigError("sweep axis: " + std::string(to_string(param)) + " cannot be negative");
        }
    }

    // Inclusive endpoints, uniform spacing.
    double value(int i) const {
        if (i == count - 1) return stop;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }

    std::vector<double> values() const {
        std::vector<double> out(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = value(i);
        return out;
    }

    double step() const { return (stop - start) / static_cast<double>(count - 1); }
};

namespace detail {
inline double parse_double(std::string_view s, std::string_view what) {
    double out = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    if (ec != std::errc{} || ptr != end || s.empty()) {
        throw ConfigError("malformed " + std::string(what) + " '" + std::string(s) + "'");
    }
    return out;
}
}  // namespace detail

// "name:start:stop:count"
inline SweepAxis parse_axis(std::string_view spec) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = spec.find(':', pos);
        parts.push_back(spec.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    if (parts.size() != 4) throw ConfigError("axis spec must be name:start:stop:count, got '" + std::string(spec) + "'");

    SweepAxis axis;
    axis.param = parse_sweep_param(parts[0]);
    axis.start = detail::parse_double(parts[1], "axis start");
    axis.stop = detail::parse_double(parts[2], "axis stop");
    int count = 0;
    auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), count);
    if (ec != std::errc{} || ptr != parts[3].data() + parts[3].size() || parts[3].empty()) {
        throw ConfigError("malformed axis count '" + std::string(parts[3]) + "'");
    }
    axis.count = count;
    axis.validate();
    return axis;
}

// Magnon baths follow the environment temperature, evaluated at the cavity
// frequency (all modes resonant at the reference point).
inline void sync_occupations(SystemParams& p, const PhysicalEnv& env) {
    const double n = thermal_occupation(env, env.omega_d_hz);
    p.n_o1 = n;
    p.n_o2 = n;
}

inline void apply_param(SystemParams& p, PhysicalEnv& env, SweepParam which, double value) {
    switch (which) {
        case SweepParam::delta_d: p.delta_d = value; break;
        case SweepParam::delta_o: p.delta_o1 = p.delta_o2 = value; break;
        case SweepParam::lambda: p.lambda = value; break;
        case SweepParam::r: p.r = value; break;
        case SweepParam::temperature_mk:
            env.temperature_k = value * 1e-3;
            sync_occupations(p, env);
            break;
        case SweepParam::g: p.g1 = p.g2 = value; break;
        case SweepParam::n_o: p.n_o1 = p.n_o2 = value; break;
    }
}

// ---------------------------------------------------------------------------
// Records

struct SweepRecord {
    double axis1 = 0.0;
    std::optional<double> axis2;
    bool stable = false;
    std::optional<double> e_n;
    std::optional<double> s_ab;
    std::optional<double> s_ba;
    std::optional<double> gip;
    std::optional<double> mancini;
    std::array<std::optional<double>, 6> var{};
    std::optional<double> sq_db_x1;
    std::optional<double> r_d;
    std::optional<double> r_o1;
    std::optional<double> r_o2;
    std::optional<double> r_min;

    bool operator==(const SweepRecord&) const = default;
};

inline SweepRecord make_record(const SystemParams& p) {
    SweepRecord rec;
    const auto rep = evaluate_point(p);
    if (!rep) return rec;

    rec.stable = true;
    rec.e_n = rep->magnons.entanglement;
    rec.s_ab = rep->magnons.steering_ab;
    rec.s_ba = rep->magnons.steering_ba;
    rec.gip = rep->magnons.gip;
    rec.mancini = rep->magnons.mancini_product;
    for (std::size_t i = 0; i < 6; ++i) rec.var[i] = rep->variances[i];
    rec.sq_db_x1 = rep->squeezing_db_x1;
    rec.r_d = rep->tripartite.residual[0];
    rec.r_o1 = rep->tripartite.residual[1];
    rec.r_o2 = rep->tripartite.residual[2];
    rec.r_min = rep->tripartite.r_min;
    return rec;
}

namespace detail {
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}
}  // namespace detail

// One record per grid point, row-major (first axis outermost). Output order
// and content do not depend on `threads`.
inline std::vector<SweepRecord> run_sweep(const SystemParams& base, const PhysicalEnv& env,
                                          const std::vector<SweepAxis>& axes, unsigned threads = 1) {
    if (axes.empty() || axes.size() > 2) throw ConfigError("run_sweep: expected 1 or 2 axes");
    for (const SweepAxis& a : axes) a.validate();

    const std::size_t n1 = static_cast<std::size_t>(axes[0].count);
    const std::size_t n2 = axes.size() == 2 ? static_cast<std::size_t>(axes[1].count) : 1;
    std::vector<SweepRecord> out(n1 * n2);

    detail::parallel_for(out.size(), threads, [&](std::size_t k) {
        const std::size_t i = k / n2;
        const std::size_t j = k % n2;
        SystemParams p = base;
        PhysicalEnv e = env;
        const double v1 = axes[0].value(static_cast<int>(i));
        apply_param(p, e, axes[0].param, v1);
        std::optional<double> v2;
        if (axes.size() == 2) {
            v2 = axes[1].value(static_cast<int>(j));
            apply_param(p, e, axes[1].param, *v2);
        }
        SweepRecord rec = make_record(p);
        rec.axis1 = v1;
        rec.axis2 = v2;
        out[k] = rec;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Figure presets

struct PresetValue {
    std::string key;
    std::string value;
    bool stated = true;  // false: filled by a documented default
};

struct SeriesSpec {
    SweepParam param = SweepParam::lambda;
    std::vector<double> values;
};

struct FigurePreset {
    std::string name;
    std::string quantity;  // column of interest, e.g. "E_N"
    SystemParams params;
    PhysicalEnv env;
    std::vector<SweepAxis> axes;
    std::optional<SeriesSpec> series;
    std::vector<PresetValue> provenance;
};

inline constexpr std::array<std::string_view, 12> kFigureNames{
    "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b",
    "fig5a", "fig5b", "fig6a", "fig6b", "fig7a", "fig7b"};

inline constexpr int kDetuningPoints = 101;
inline constexpr double kDetuningSpan = 5.0;

inline FigurePreset figure_preset(std::string_view name) {
    if (std::find(kFigureNames.begin(), kFigureNames.end(), name) == kFigureNames.end()) {
        std::string valid;
        for (auto n : kFigureNames) valid += (valid.empty() ? "" : ", ") + std::string(n);
        throw ConfigError("unknown figure '" + std::string(name) + "' (valid: " + valid + ")");
    }

    FigurePreset f;
    f.name = std::string(name);
    f.params = SystemParams::baseline();
    f.env = PhysicalEnv{};
    f.quantity = "E_N";

    auto stated = [&](std::string k, double v) { f.provenance.push_back({std::move(k), format_number(v), true}); };
    auto fallback = [&](std::string k, std::string v) { f.provenance.push_back({std::move(k), std::move(v), false}); };

    stated("omega_d_ghz", 10.0);
    stated("kappa_d_mhz", 5.0);
    stated("kappa_o_ratio", 0.2);

    const SweepAxis delta_o{SweepParam::delta_o, -kDetuningSpan, kDetuningSpan, kDetuningPoints};
    const SweepAxis delta_d{SweepParam::delta_d, -kDetuningSpan, kDetuningSpan, kDetuningPoints};
    const std::vector<double> gain_series{0.0, 0.1, 0.3, 0.5};
    const std::vector<double> temperature_series{10.0, 50.0, 100.0};

    auto set_temperature_mk = [&](double mk, bool is_stated) {
        f.env.temperature_k = mk * 1e-3;
        sync_occupations(f.params, f.env);
        if (is_stated) stated("temperature_mk", mk);
        else fallback("temperature_mk", format_number(mk));
    };
    auto detuning_grid = [&] {
        f.axes = {delta_o, delta_d};
        fallback("axes", "delta_o, delta_d in [-5, 5] kappa_d, 101 points each");
    };

    const char tag = name[3];
    const bool panel_b = name[4] == 'b';

    switch (tag) {
        case '2':
            f.params.lambda = panel_b ? 0.2 : 0.0;
            stated("lambda", f.params.lambda);
            stated("g", 4.0);
            set_temperature_mk(20.0, true);
            f.params.r = 2.0;
            fallback("r", "2");
            detuning_grid();
            break;
        case '3':
            stated("g", 4.0);
            f.series = SeriesSpec{SweepParam::lambda, gain_series};
            fallback("series", "lambda in {0, 0.1, 0.3, 0.5} kappa_d");
            if (!panel_b) {
                f.params.r = 2.0;
                stated("r", 2.0);
                set_temperature_mk(20.0, false);
                f.axes = {SweepAxis{SweepParam::temperature_mk, 0.0, 1200.0, 121}};
                fallback("axes", "temperature_mk in [0, 1200], 121 points");
            } else {
                set_temperature_mk(20.0, true);
                f.axes = {SweepAxis{SweepParam::r, 0.0, 3.0, 61}};
                fallback("axes", "r in [0, 3], 61 points");
            }
            break;
        case '4':
            f.quantity = "E_N,S_ab,S_ba,GIP";
            stated("g", 4.0);
            set_temperature_mk(20.0, true);
            f.params.r = panel_b ? 2.0 : 1.0;
            stated("r", f.params.r);
            f.axes = {SweepAxis{SweepParam::lambda, 0.0, 0.5, 51}};
            stated("lambda_range", 0.5);
            break;
        case '5':
        case '6':
            f.quantity = tag == '5' ? "mancini" : "var_x1";
            stated("g", 4.0);
            set_temperature_mk(20.0, true);
            f.params.lambda = 0.2;
            stated("lambda", 0.2);
            if (!panel_b) {
                f.params.r = 2.0;
                stated("r", 2.0);
                detuning_grid();
            } else if (tag == '5') {
                stated("delta_o", 0.0);
                f.axes = {delta_d, SweepAxis{SweepParam::r, 0.0, 3.0, 61}};
                fallback("axes", "delta_d in [-5, 5] kappa_d (101 points), r in [0, 3] (61 points)");
            } else {
                stated("delta_d", 0.0);
                f.axes = {SweepAxis{SweepParam::r, 0.0, 3.0, 61}, delta_o};
                fallback("axes", "r in [0, 3] (61 points), delta_o in [-5, 5] kappa_d (101 points)");
            }
            break;
        case '7':
            f.quantity = "R_min";
            f.params.g1 = f.params.g2 = 1.0;
            if (!panel_b) {
                stated("g", 1.0);
                f.params.lambda = 0.2;
                stated("lambda", 0.2);
                f.axes = {SweepAxis{SweepParam::r, 0.0, 2.0, 201}};
                fallback("axes", "r in [0, 2], 201 points");
            } else {
                fallback("g", "1");
                f.params.r = 0.4;
                stated("r", 0.4);
                f.axes = {SweepAxis{SweepParam::lambda, 0.0, 0.5, 101}};
                fallback("axes", "lambda in [0, 0.5] kappa_d, 101 points");
            }
            set_temperature_mk(10.0, false);
            f.series = SeriesSpec{SweepParam::temperature_mk, temperature_series};
            fallback("series", "temperature_mk in {10, 50, 100}");
            break;
        default:
            break;
    }
    return f;
}

// Runs a preset. With a series, each series value yields one pass over the
// single axis and the series value is reported in the axis2 column.
inline std::vector<SweepRecord> run_figure(const FigurePreset& f, unsigned threads = 1) {
    if (!f.series) return run_sweep(f.params, f.env, f.axes, threads);

    std::vector<SweepRecord> out;
    for (double s : f.series->values) {
        SystemParams p = f.params;
        PhysicalEnv e = f.env;
        apply_param(p, e, f.series->param, s);
        auto part = run_sweep(p, e, f.axes, threads);
        for (SweepRecord& rec : part) rec.axis2 = s;
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace magnonics
