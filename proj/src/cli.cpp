#include "cartanflat/cli.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "cartanflat/presets.hpp"
#include "cartanflat/random.hpp"
#include "cartanflat/sasaki.hpp"
#include "cartanflat/transport.hpp"
#include "cartanflat/zcr.hpp"

namespace cartanflat::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands{"curvature", "flatness", "identity", "compat",
                                      "transport", "develop",  "zcr"};

const std::set<std::string> kTopLevel{"command", "preset",  "preset_params", "chart",
                                      "metric",  "variant", "grid",          "tol",
                                      "seed",    "trials",  "expected_curvature",
                                      "curve",   "v0",      "base",          "targets",
                                      "u",       "output"};

double default_tolerance(const std::string& command) {
    if (command == "flatness") return 1e-6;
    if (command == "curvature") return 1e-8;
    if (command == "identity") return 1e-5;
    if (command == "compat") return 1e-9;
    if (command == "zcr") return 1e-8;
    return 1e-7;  // transport, develop
}

// Typed access to a JSON object that reports failures by JSON pointer.
class Fields {
public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
    }

    bool has(const char* key) const { return j_.contains(key); }
    std::string at(const char* key) const { return path_ + "/" + key; }
    const json& raw(const char* key) const { return j_.at(key); }

    void only(const std::set<std::string>& allowed) const {
        for (const auto& [k, v] : j_.items()) {
            if (!allowed.count(k)) throw ConfigError(path_ + "/" + k, "unknown field");
        }
    }

    const json& require(const char* key) const {
        if (!has(key)) throw ConfigError(at(key), "required field is missing");
        return j_.at(key);
    }

    std::string string(const char* key) const {
        const json& v = require(key);
        if (!v.is_string()) throw ConfigError(at(key), "expected a string");
        return v.get<std::string>();
    }

    double number(const char* key) const {
        const json& v = require(key);
        if (!v.is_number()) throw ConfigError(at(key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(at(key), "expected a finite number");
        return d;
    }

    double positive(const char* key) const {
        const double d = number(key);
        if (!(d > 0.0)) throw ConfigError(at(key), "must be positive");
        return d;
    }

    std::uint64_t count(const char* key, std::uint64_t min) const {
        const json& v = require(key);
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
            throw ConfigError(at(key), "expected a non-negative integer");
        }
        const auto n = v.get<std::uint64_t>();
        if (n < min) throw ConfigError(at(key), "must be at least " + std::to_string(min));
        return n;
    }

    std::vector<double> vector(const char* key) const { return vector_at(require(key), at(key)); }

    static std::vector<double> vector_at(const json& v, const std::string& path) {
        if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw ConfigError(path + "/" + std::to_string(i), "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    const std::string& path() const noexcept { return path_; }

private:
    const json& j_;
    std::string path_;
};

struct Job {
    std::string command;
    json echo;  // normalised config, as run
    std::optional<PresetInfo> preset;
    std::optional<ChartMetric> metric;
    std::optional<Chart> chart;
    std::optional<Variant> variant;
    std::size_t grid = 20;
    double tol = 0.0;
    std::uint64_t seed = 1;
    std::uint64_t trials = 10;
    std::optional<double> expected_curvature;
    PresetParams params;
    const json* config = nullptr;
};

std::vector<std::vector<std::string>> metric_text(const json& v, const std::string& path, std::size_t n) {
    if (!v.is_array() || v.size() != n) {
        throw ConfigError(path, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " array of strings");
    }
    std::vector<std::vector<std::string>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row = path + "/" + std::to_string(i);
        if (!v[i].is_array() || v[i].size() != n) throw ConfigError(row, "expected " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) {
            const json& e = v[i][j];
            if (e.is_string()) {
                out[i].push_back(e.get<std::string>());
            } else if (e.is_number()) {
                out[i].push_back(format_double(e.get<double>()));
            } else {
                throw ConfigError(row + "/" + std::to_string(j), "expected an expression string");
            }
        }
    }
    return out;
}

Chart chart_from(const json& v, const std::string& path) {
    Fields c(v, path);
    c.only({"coords", "domain", "margin"});
    const json& coords = c.require("coords");
    if (!coords.is_array()) throw ConfigError(c.at("coords"), "expected an array of names");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (!coords[i].is_string()) throw ConfigError(c.at("coords") + "/" + std::to_string(i), "expected a string");
        names.push_back(coords[i].get<std::string>());
    }
    const json& domain = c.require("domain");
    if (!domain.is_array() || domain.size() != names.size()) {
        throw ConfigError(c.at("domain"), "expected one [lo, hi] pair per coordinate");
    }
    std::vector<Interval> box;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        const std::string p = c.at("domain") + "/" + std::to_string(i);
        const auto pair = Fields::vector_at(domain[i], p);
        if (pair.size() != 2 || !(pair[0] < pair[1])) throw ConfigError(p, "expected [lo, hi] with lo < hi");
        box.push_back({pair[0], pair[1]});
    }
    const double margin = c.has("margin") ? c.number("margin") : 0.05;
    try {
        return Chart(names, box, margin);
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
}

Variant variant_from(const Fields& f) {
    const std::string v = f.string("variant");
    if (v == "h") return Variant::h;
    if (v == "s") return Variant::s;
    throw ConfigError(f.at("variant"), "expected \"h\" or \"s\"");
}

PresetParams params_from(const json& v, const std::string& path) {
    Fields f(v, path);
    f.only({"a", "c", "u", "seed", "dim"});
    PresetParams p;
    if (f.has("a")) p.a = f.number("a");
    if (f.has("c")) p.c = f.number("c");
    if (f.has("u")) p.u = f.string("u");
    if (f.has("seed")) p.seed = f.count("seed", 0);
    if (f.has("dim")) p.dim = f.count("dim", 2);
    return p;
}

Job parse_job(const json& config, const Overrides& ov) {
    Fields f(config, "");
    f.only(kTopLevel);
    Job job;
    job.config = &config;

    if (ov.command) {
        job.command = *ov.command;
        if (f.has("command") && f.string("command") != job.command) {
            throw ConfigError("/command", "config command differs from the command line");
        }
    } else {
        job.command = f.string("command");
    }
    if (!kCommands.count(job.command)) throw ConfigError("/command", "unknown command \"" + job.command + "\"");

    const bool has_preset = f.has("preset");
    const bool has_metric = f.has("metric");
    if (has_preset == has_metric) {
        throw ConfigError(has_preset ? "/metric" : "/preset", "exactly one of preset and metric is required");
    }
    if (f.has("preset_params")) job.params = params_from(f.raw("preset_params"), "/preset_params");
    if (has_preset) {
        if (f.has("chart")) throw ConfigError("/chart", "a preset carries its own chart");
        try {
            job.preset = preset_info(f.string("preset"), job.params);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError("/preset", e.what());
        }
        if (job.preset->has_constant_curvature) job.expected_curvature = job.preset->curvature;
        try {
            job.metric = metric_from_info(*job.preset);
        } catch (const Error& e) {
            throw ConfigError("/preset", e.what());
        }
    } else {
        if (f.has("preset_params")) throw ConfigError("/preset_params", "only valid with a preset");
        const Chart chart = chart_from(f.require("chart"), "/chart");
        const auto text = metric_text(f.raw("metric"), "/metric", chart.dim());
        try {
            job.metric = ChartMetric::from_text(chart, text);
        } catch (const Error& e) {
            throw ConfigError("/metric", e.what());
        }
    }
    job.chart = job.metric->chart();

    const bool needs_variant = job.command != "curvature" && job.command != "zcr";
    if (needs_variant) {
        job.variant = variant_from(f);
    } else if (f.has("variant")) {
        variant_from(f);  // still validated
    }

    if (f.has("grid")) job.grid = f.count("grid", 2);
    if (ov.grid) {
        if (*ov.grid < 2) throw ConfigError("/grid", "must be at least 2");
        job.grid = *ov.grid;
    }
    job.tol = default_tolerance(job.command);
    if (f.has("tol")) job.tol = f.positive("tol");
    if (ov.tol) {
        if (!(*ov.tol > 0.0)) throw ConfigError("/tol", "must be positive");
        job.tol = *ov.tol;
    }
    if (f.has("seed")) job.seed = f.count("seed", 0);
    if (ov.seed) job.seed = *ov.seed;
    if (f.has("trials")) job.trials = f.count("trials", 1);
    if (f.has("expected_curvature")) job.expected_curvature = f.number("expected_curvature");
    if (f.has("output")) {
        Fields o(f.raw("output"), "/output");
        o.only({"report", "csv"});
        if (o.has("report")) o.string("report");
        if (o.has("csv")) o.string("csv");
    }

    job.echo = config;
    job.echo["command"] = job.command;
    job.echo["grid"] = job.grid;
    job.echo["tol"] = job.tol;
    job.echo["seed"] = job.seed;
    return job;
}

json point_json(std::span<const double> p) { return json(std::vector<double>(p.begin(), p.end())); }

json vector_json(const Vec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

// Residual bookkeeping shared by every command: max value and the first
// point (in evaluation order) where it occurs.
struct Tracker {
    double max = 0.0;
    json argmax = nullptr;
    std::size_t points = 0;
    void add(double r, const json& where) {
        ++points;
        if (points == 1 || r > max) {
            max = r;
            argmax = where;
        }
    }
};

void finish(json& report, const Tracker& t, double tol) {
    report["max_residual"] = t.max;
    report["argmax"] = t.argmax;
    report["points"] = t.points;
    report["tolerance"] = tol;
    report["pass"] = t.max <= tol;
}

json run_curvature(const Job& job) {
    const ChartMetric& m = *job.metric;
    const std::size_t n = m.dim();
    if (n != 2 && !job.expected_curvature) {
        throw ConfigError("/expected_curvature", "required for charts of dimension above 2");
    }
    json report;
    Tracker t;
    double k_min = INFINITY, k_max = -INFINITY, structural = 0.0, gauss_gap = 0.0;
    const std::optional<FrameField> frame =
        n == 2 ? std::optional<FrameField>(orthonormal_frame(m)) : std::nullopt;
    const std::optional<StructureEquations> eq =
        frame ? std::optional<StructureEquations>(StructureEquations(*frame)) : std::nullopt;
    for (const auto& p : m.chart().grid(job.grid)) {
        m.check_positive_definite(p);
        const MetricJet jet = m.jet(p);
        const RiemannTensor r = riemann(jet);
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double k = sectional_curvature(jet, r, Vec::Unit(n, i), Vec::Unit(n, j));
                k_min = std::min(k_min, k);
                k_max = std::max(k_max, k);
                if (job.expected_curvature) residual = std::max(residual, std::abs(k - *job.expected_curvature));
                if (eq) {
                    const double gap = std::abs(eq->gauss_curvature(p) - k);
                    gauss_gap = std::max(gauss_gap, gap);
                    residual = std::max(residual, gap);
                }
            }
        }
        if (eq) structural = std::max(structural, eq->residual(p));
        t.add(residual, point_json(p));
    }
    report["curvature_min"] = k_min;
    report["curvature_max"] = k_max;
    if (job.expected_curvature) report["expected_curvature"] = *job.expected_curvature;
    if (eq) {
        report["max_gauss_vs_riemann"] = gauss_gap;
        report["max_structural_residual"] = structural;
    }
    finish(report, t, job.tol);
    return report;
}

json run_flatness(const Job& job) {
    const FlatnessProbe probe(*job.metric, *job.variant);
    Tracker t;
    for (const auto& p : job.chart->grid(job.grid)) t.add(probe.residual(p), point_json(p));
    json report;
    report["variant"] = to_string(*job.variant);
    report["model_curvature"] = BundleConnection::of(*job.variant).model_curvature();
    finish(report, t, job.tol);
    return report;
}

json run_identity(const Job& job) {
    const BundleConnection c = BundleConnection::of(*job.variant);
    Tracker t;
    double e_component = 0.0;
    std::uint64_t index = 0;
    for (const auto& p : job.chart->grid(job.grid)) {
        job.metric->check_positive_definite(p);
        const std::uint64_t point_seed = Rng::stream(job.seed, index++).below(UINT64_MAX);
        const IdentityReport r = identity_residual(c, *job.metric, p, job.trials, point_seed);
        e_component = std::max(e_component, r.max_e_component);
        t.add(r.max_residual, point_json(p));
    }
    json report;
    report["variant"] = to_string(*job.variant);
    report["trials_per_point"] = job.trials;
    report["max_e_component"] = e_component;
    finish(report, t, job.tol);
    return report;
}

json run_compat(const Job& job) {
    const BundleConnection c = BundleConnection::of(*job.variant);
    const Chart& chart = *job.chart;
    const std::size_t n = chart.dim();
    Tracker t;
    for (std::uint64_t k = 0; k < job.trials; ++k) {
        Rng rng = Rng::stream(job.seed, k);
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Interval s = chart.sampling_interval(i);
            p[i] = rng.uniform(s.lo, s.hi);
        }
        const BundleSection a = BundleSection::random_polynomial(n, rng);
        const BundleSection b = BundleSection::random_polynomial(n, rng);
        Vec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
        job.metric->check_positive_definite(p);
        t.add(metric_compatibility_residual(c, *job.metric, a, b, x, p), point_json(p));
    }
    json report;
    report["variant"] = to_string(*job.variant);
    report["trials"] = job.trials;
    finish(report, t, job.tol);
    return report;
}

ChartCurve curve_from(const json& v, const std::string& path) {
    Fields f(v, path);
    f.only({"coords", "t0", "t1", "samples_per_unit"});
    const json& coords = f.require("coords");
    if (!coords.is_array()) throw ConfigError(f.at("coords"), "expected an array of expressions in t");
    std::vector<std::string> text;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (!coords[i].is_string()) throw ConfigError(f.at("coords") + "/" + std::to_string(i), "expected a string");
        text.push_back(coords[i].get<std::string>());
    }
    const double t0 = f.has("t0") ? f.number("t0") : 0.0;
    const double t1 = f.has("t1") ? f.number("t1") : 1.0;
    const double samples = f.has("samples_per_unit") ? f.positive("samples_per_unit") : 256.0;
    try {
        return ChartCurve::from_text(text, t0, t1, samples);
    } catch (const SyntaxError& e) {
        throw ConfigError(f.at("coords"), e.what());
    } catch (const UnknownIdentifier& e) {
        throw ConfigError(f.at("coords"), e.what());
    }
}

std::string csv_header(const Chart& chart, std::size_t ambient, const char* prefix) {
    std::ostringstream out;
    out << "t";
    for (const auto& c : chart.coords()) out << ',' << c;
    for (std::size_t a = 0; a < ambient; ++a) out << ',' << prefix << a;
    out << '\n';
    return out.str();
}

void csv_row(std::ostringstream& out, double t, std::span<const double> p, const Vec& v) {
    out << format_double(t);
    for (double x : p) out << ',' << format_double(x);
    for (Eigen::Index a = 0; a < v.size(); ++a) out << ',' << format_double(v[a]);
    out << '\n';
}

json run_transport(const Job& job, std::string& csv) {
    Fields f(*job.config, "");
    const ChartCurve curve = curve_from(f.require("curve"), "/curve");
    const std::size_t n = job.chart->dim();
    if (curve.dim() != n) throw ConfigError("/curve/coords", "expected " + std::to_string(n) + " coordinates");
    const FrameField frame = orthonormal_frame(*job.metric);
    const MatrixOneForm a = bundle_connection_form(BundleConnection::of(*job.variant), frame);
    Vec v0 = Vec::Unit(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n));
    if (f.has("v0")) {
        const auto v = f.vector("v0");
        if (v.size() != n + 1) throw ConfigError("/v0", "expected " + std::to_string(n + 1) + " components");
        v0 = Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
    }
    const double norm0 = ambient_product(*job.variant, v0, v0);

    std::ostringstream rows;
    rows << csv_header(*job.chart, n + 1, "v");
    Tracker t;
    Vec last = v0;
    for (const auto& s : transport_path(a, *job.chart, curve)) {
        last = s.transport * v0;
        csv_row(rows, s.t, s.point, last);
        t.add(std::abs(ambient_product(*job.variant, last, last) - norm0), json{{"t", s.t}, {"point", s.point}});
    }
    csv = rows.str();

    json report;
    report["variant"] = to_string(*job.variant);
    report["steps"] = curve.steps();
    report["v0"] = vector_json(v0);
    report["v1"] = vector_json(last);
    report["residual_kind"] = "fiber metric drift";
    const auto start = curve.point(curve.t0());
    const auto end = curve.point(curve.t1());
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(start[i] - end[i]));
    if (gap <= 1e-12) {
        const Mat h = holonomy(a, *job.chart, curve);
        report["holonomy_deviation"] = (h - Mat::Identity(h.rows(), h.cols())).cwiseAbs().maxCoeff();
    }
    finish(report, t, job.tol);
    return report;
}

json run_develop(const Job& job, std::string& csv) {
    Fields f(*job.config, "");
    const std::size_t n = job.chart->dim();
    const Variant v = *job.variant;
    const FrameField frame = orthonormal_frame(*job.metric);
    const double sigma = BundleConnection::of(v).fiber_sign;
    json report;
    report["variant"] = to_string(v);
    report["target_norm"] = sigma;
    Tracker t;
    bool warned = false;
    std::ostringstream rows;
    rows << csv_header(*job.chart, n + 1, "X");

    if (f.has("curve")) {
        if (f.has("targets") || f.has("base")) throw ConfigError("/curve", "give either a curve or base and targets");
        const ChartCurve curve = curve_from(f.raw("curve"), "/curve");
        if (curve.dim() != n) throw ConfigError("/curve/coords", "expected " + std::to_string(n) + " coordinates");
        const FlatnessProbe probe(frame, v);
        for (const auto& s : develop_along(v, frame, curve)) {
            csv_row(rows, s.t, s.point, s.ambient);
            t.add(std::abs(ambient_product(v, s.ambient, s.ambient) - sigma), json{{"t", s.t}, {"point", s.point}});
            if (!warned && probe.residual(s.point) > 1e-6) warned = true;
        }
    } else {
        const auto base = f.vector("base");
        if (base.size() != n) throw ConfigError("/base", "expected " + std::to_string(n) + " coordinates");
        if (!job.chart->contains(base)) throw ConfigError("/base", "outside the chart domain");
        const json& targets = f.require("targets");
        if (!targets.is_array() || targets.empty()) throw ConfigError("/targets", "expected a non-empty array of points");
        json developed = json::array();
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const std::string path = "/targets/" + std::to_string(k);
            const auto q = Fields::vector_at(targets[k], path);
            if (q.size() != n) throw ConfigError(path, "expected " + std::to_string(n) + " coordinates");
            if (!job.chart->contains(q)) throw ConfigError(path, "outside the chart domain");
            const Development d = develop(v, frame, base, q);
            warned = warned || d.curvature_warning;
            csv_row(rows, static_cast<double>(k), q, d.point);
            t.add(std::abs(ambient_product(v, d.point, d.point) - sigma), point_json(q));
            developed.push_back(json{{"target", q}, {"ambient", vector_json(d.point)}});
        }
        report["base"] = base;
        report["developed"] = developed;
    }
    csv = rows.str();
    report["curvature_warning"] = warned;
    finish(report, t, job.tol);
    return report;
}

json run_zcr(const Job& job) {
    Fields f(*job.config, "");
    if (job.chart->dim() != 2) throw ConfigError("/chart", "zcr needs a two-dimensional chart");
    const std::string text = f.has("u") ? f.string("u") : job.params.u;
    std::optional<ZeroCurvatureCheck> check;
    try {
        check.emplace(UField::from_text(*job.chart, text));
    } catch (const SyntaxError& e) {
        throw ConfigError(f.has("u") ? "/u" : "/preset_params/u", e.what());
    } catch (const UnknownIdentifier& e) {
        throw ConfigError(f.has("u") ? "/u" : "/preset_params/u", e.what());
    }
    const EquivalenceReport e = equivalence_scan(*check, job.grid);
    json report;
    report["u"] = text;
    report["max_pde_residual"] = e.pde.max_residual;
    report["pde_argmax"] = e.pde.argmax;
    report["zcr_over_pde"] = e.zcr_over_pde ? json(*e.zcr_over_pde) : json(nullptr);
    report["pde_over_zcr"] = e.pde_over_zcr ? json(*e.pde_over_zcr) : json(nullptr);
    report["one_sided_points"] = e.one_sided_points;
    report["correlation"] = e.correlation ? json(*e.correlation) : json(nullptr);
    report["max_residual"] = e.zcr.max_residual;
    report["argmax"] = e.zcr.argmax;
    report["points"] = e.zcr.points;
    report["tolerance"] = job.tol;
    report["pass"] = e.zcr.max_residual <= job.tol;
    return report;
}

json error_json(const char* kind, const std::string& message) {
    return json{{"kind", kind}, {"message", message}};
}

}  // namespace

Outcome run(const json& config, const Overrides& overrides) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    json& report = out.report;
    report["tool"] = "cartanflat";
    report["version"] = kVersion;
    try {
        const Job job = parse_job(config, overrides);
        report["config"] = job.echo;
        report["command"] = job.command;
        report["dimension"] = job.chart->dim();
        json result;
        if (job.command == "curvature") result = run_curvature(job);
        else if (job.command == "flatness") result = run_flatness(job);
        else if (job.command == "identity") result = run_identity(job);
        else if (job.command == "compat") result = run_compat(job);
        else if (job.command == "transport") result = run_transport(job, out.csv);
        else if (job.command == "develop") result = run_develop(job, out.csv);
        else result = run_zcr(job);
        report.update(result);
        out.exit_code = report["pass"].get<bool>() ? pass : fail;
    } catch (const ConfigError& e) {
        report["error"] = error_json("config", e.what());
        report["error"]["path"] = e.path();
        out.exit_code = invalid;
    } catch (const SingularMetric& e) {
        report["error"] = error_json("singular_metric", e.what());
        report["error"]["point"] = e.point();
        out.exit_code = invalid;
    } catch (const Error& e) {
        report["error"] = error_json("domain", e.what());
        out.exit_code = invalid;
    }
    if (out.exit_code == invalid) out.csv.clear();
    report["exit_code"] = out.exit_code;
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

json list_presets() {
    json out = json::array();
    for (const auto& name : preset_names()) {
        const PresetInfo info = preset_info(name);
        json domain = json::array();
        for (const auto& d : info.domain) domain.push_back({d.lo, d.hi});
        json entry{{"name", info.name},
                   {"description", info.description},
                   {"coords", info.coords},
                   {"domain", domain},
                   {"metric", info.metric}};
        entry["curvature"] = info.has_constant_curvature ? json(info.curvature) : json(nullptr);
        out.push_back(entry);
    }
    return out;
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

}  // namespace cartanflat::cli
