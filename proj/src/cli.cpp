#include "bpgeo/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <string>

#include "bpgeo/birkhoff.hpp"
#include "bpgeo/chebgeo.hpp"
#include "bpgeo/error.hpp"
#include "bpgeo/io.hpp"
#include "bpgeo/opnorm.hpp"
#include "bpgeo/sampling.hpp"

namespace bpgeo::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kLowerBoundWarning = "value is a lower bound";

struct Options {
    std::string matrix;
    std::string p;
    std::string method;
    int restarts = 0;
    std::optional<std::uint64_t> seed;
    int grid = 3600;
    double tol = 0.0;
    std::size_t n = 0;
    int k = 8;
    std::string p_grid;
};

std::uint64_t resolve_seed(const Options& o) {
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv("BP_SEED")) {
        std::uint64_t v = 0;
        const std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size()) return v;
        throw Error(ErrorCode::InvalidArgument, "BP_SEED is not an unsigned integer: '" + std::string(s) + "'");
    }
    return 0;
}

PowerConfig power_config(const Options& o) {
    PowerConfig cfg;
    cfg.restarts = o.restarts;
    cfg.seed = resolve_seed(o);
    return cfg;
}

json permutation_json(const PermutationMatrix& p) { return json(p.sigma()); }

json report(std::string_view command, json inputs) {
    json j;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    return j;
}

void finish(json& j, const std::vector<std::string>& warnings, std::ostream& out) {
    j["warnings"] = warnings;
    out << j.dump(2) << '\n';
}

json radius_fields(const RadiusReport& r) {
    json j;
    j["value"] = r.value;
    j["method"] = to_string(r.method);
    j["lower_bound"] = r.lower_bound;
    j["upper_bound"] = r.upper_bound;
    j["maximizer"] = r.maximizer ? permutation_json(*r.maximizer) : json(nullptr);
    return j;
}

void merge(json& into, const json& fields) {
    for (const auto& [key, value] : fields.items()) into[key] = value;
}

int cmd_norm(const Options& o, std::ostream& out, std::istream& in) {
    const Mat a = io::load_matrix(o.matrix, in);
    const Exponent p = Exponent::parse(o.p);
    const PowerConfig cfg = power_config(o);
    NormEstimate est;
    if (o.method == "exact") est = opnorm_exact(a, p);
    else if (o.method == "estimate") est = opnorm_estimate(a, p, cfg);
    else if (o.method == "oracle") est = opnorm_oracle_small(a, p, o.grid);
    else est = opnorm(a, p, cfg);

    json j = report("norm", {{"matrix", o.matrix}, {"p", p.to_string()}, {"method", o.method}});
    j["value"] = est.value;
    j["method"] = to_string(est.method);
    j["certificate"] = est.certificate;
    j["iterations"] = est.iterations;
    j["restarts_used"] = est.restarts_used;
    j["converged"] = est.converged;
    std::vector<std::string> warnings;
    if (est.is_lower_bound()) warnings.emplace_back(kLowerBoundWarning);
    if (!est.converged) warnings.emplace_back("no restart converged within max_iter");
    finish(j, warnings, out);
    return kExitOk;
}

int cmd_decompose(const Options& o, std::ostream& out, std::istream& in) {
    const DoublyStochastic d = validate_doubly_stochastic(io::load_matrix(o.matrix, in));
    const double tol = o.tol > 0.0 ? o.tol : kDefaultDecomposeTol;
    const BirkhoffDecomposition dec = birkhoff_decompose(d, tol);
    json j = report("decompose", {{"matrix", o.matrix}, {"tol", tol}});
    json terms = json::array();
    for (const auto& t : dec.terms) terms.push_back({{"alpha", t.alpha}, {"sigma", permutation_json(t.perm)}});
    j["terms"] = std::move(terms);
    j["residual"] = dec.residual;
    finish(j, {}, out);
    return kExitOk;
}

int cmd_ball(const Options& o, std::ostream& out, std::istream& in) {
    const DoublyStochastic d = validate_doubly_stochastic(io::load_matrix(o.matrix, in));
    const Exponent p = Exponent::parse(o.p);
    RadiusReport r;
    if (p.is_one()) r = bounding_radius_l1(d);
    else if (p.is_inf()) r = bounding_radius_linf(d);
    else r = bounding_radius_enumerate(d, p, power_config(o));
    json j = report("ball", {{"matrix", o.matrix}, {"p", p.to_string()}});
    merge(j, radius_fields(r));
    finish(j, r.warnings, out);
    return kExitOk;
}

ChebyshevStrategy parse_strategy(const std::string& m) {
    if (m == "exact") return ChebyshevStrategy::Exact;
    if (m == "conjecture") return ChebyshevStrategy::Conjecture;
    if (m == "enumerate") return ChebyshevStrategy::Enumerate;
    if (m == "bounds") return ChebyshevStrategy::Bounds;
    return ChebyshevStrategy::Auto;
}

int cmd_radius(const Options& o, std::ostream& out) {
    const Exponent p = Exponent::parse(o.p);
    const RadiusReport r = chebyshev_radius(o.n, p, parse_strategy(o.method), power_config(o));
    json j = report("radius", {{"n", o.n}, {"p", p.to_string()}, {"method", o.method}});
    merge(j, radius_fields(r));
    if (r.method == RadiusMethod::Conjecture) {
        const ConjectureResult c = conjecture_radius(o.n, p);
        j["conjecture"] = {{"rho", c.rho}, {"x_p", c.x_p}, {"m1", c.m1}, {"m2", c.m2}, {"value", c.value}};
    }
    finish(j, r.warnings, out);
    return kExitOk;
}

int cmd_verify_center(const Options& o, std::ostream& out, std::istream& in) {
    const DoublyStochastic d = validate_doubly_stochastic(io::load_matrix(o.matrix, in));
    const Exponent p = Exponent::parse(o.p);
    const double tol = o.tol > 0.0 ? o.tol : (p.has_exact_norm() ? 1e-9 : 1e-6);
    const CenterCertificate c = center_certificate(d, p, tol, power_config(o));
    json j = report("verify center", {{"matrix", o.matrix}, {"p", p.to_string()}, {"tol", tol}});
    j["is_center_candidate"] = c.is_center_candidate;
    j["worst_permutation"] = permutation_json(c.worst_permutation);
    j["attained"] = c.attained;
    j["reference"] = c.reference;
    std::vector<std::string> warnings;
    if (!p.has_exact_norm()) warnings.emplace_back("attained and reference are power-method lower bounds");
    finish(j, warnings, out);
    return kExitOk;
}

int cmd_verify_spectrum(const Options& o, std::ostream& out, std::istream& in) {
    const DoublyStochastic d = validate_doubly_stochastic(io::load_matrix(o.matrix, in));
    const double tol = o.tol > 0.0 ? o.tol : 1e-8;
    const SpectrumShiftReport s = spectrum_shift_check(d, tol);
    json j = report("verify spectrum", {{"matrix", o.matrix}, {"tol", tol}});
    j["holds"] = s.holds;
    j["max_deviation"] = s.max_deviation;
    j["scale"] = s.scale;
    j["lhs"] = s.lhs;
    j["rhs"] = s.rhs;
    finish(j, {}, out);
    return kExitOk;
}

int cmd_verify_equidistance(const Options& o, std::ostream& out) {
    const Exponent p = Exponent::parse(o.p);
    const EquidistanceReport e = equidistance_check(p, o.n, power_config(o));
    json j = report("verify equidistance", {{"n", o.n}, {"p", p.to_string()}});
    j["equidistant"] = e.equidistant;
    j["min_distance"] = e.min_distance;
    j["max_distance"] = e.max_distance;
    j["permutations"] = e.permutations;
    j["tolerance"] = e.tolerance;
    std::vector<std::string> warnings;
    if (!p.has_exact_norm()) warnings.emplace_back("distances are power-method lower bounds");
    finish(j, warnings, out);
    return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
    SamplerConfig cfg;
    cfg.seed = resolve_seed(o);
    cfg.mixture_terms = o.k;
    const DoublyStochastic d =
        o.method == "mixture" ? random_birkhoff_mixture(o.n, cfg) : random_sinkhorn(o.n, cfg);
    out << io::format_matrix_text(d.mat());
    return kExitOk;
}

std::string tsv_number(std::optional<double> v) {
    if (!v) return "NA";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return buf;
}

int cmd_curve(const Options& o, std::ostream& out) {
    const auto first = o.p_grid.find(':');
    const auto second = o.p_grid.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw Error(ErrorCode::InvalidArgument, "--p-grid must look like START:STOP:COUNT");
    const double start = Exponent::parse(o.p_grid.substr(0, first)).value();
    const double stop = Exponent::parse(o.p_grid.substr(first + 1, second - first - 1)).value();
    int count = 0;
    {
        const std::string c = o.p_grid.substr(second + 1);
        auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), count);
        if (ec != std::errc{} || ptr != c.data() + c.size() || count < 1)
            throw Error(ErrorCode::InvalidArgument, "--p-grid COUNT must be a positive integer");
    }
    if (!std::isfinite(stop)) throw Error(ErrorCode::InvalidArgument, "--p-grid STOP must be finite");
    if (o.n < 2) throw Error(ErrorCode::BadDimension, "curve needs n >= 2");

    const PowerConfig cfg = power_config(o);
    const Mat gap = averager(o.n).mat() - Mat::identity(o.n);
    out << "# conjecture column: conjectured, unproven; lower_estimate: power-method lower bound\n";
    out << "p\tclosed_form\tconjecture\tlower_estimate\n";
    for (int i = 0; i < count; ++i) {
        const double pv = count == 1 ? start : start + (stop - start) * i / (count - 1);
        const Exponent p(pv);
        std::optional<double> closed, conj;
        if (p.is_one() || p.is_inf()) closed = 2.0 * (1.0 - 1.0 / static_cast<double>(o.n));
        else if (p.is_two() || o.n == 2) closed = 1.0;
        else if (o.n == 3) closed = closed_form_radius_n3(p);
        if (!p.has_exact_norm()) {
            try {
                conj = conjecture_radius(o.n, p).value;
            } catch (const Error&) {
            }
        }
        const double lower = opnorm(gap, p, cfg).value;
        out << tsv_number(pv) << '\t' << tsv_number(closed) << '\t' << tsv_number(conj) << '\t' << tsv_number(lower)
            << '\n';
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"Geometry of the Birkhoff polytope under operator l^p norms", "bpgeo"};
    app.require_subcommand(1);
    Options o;
    std::uint64_t seed_value = 0;
    std::vector<const CLI::Option*> seed_options;

    auto add_seed = [&](CLI::App* sub) {
        seed_options.push_back(sub->add_option("--seed", seed_value, "RNG seed (default: $BP_SEED, else 0)"));
    };

    auto* norm = app.add_subcommand("norm", "Operator l^p norm of a matrix");
    norm->add_option("--matrix", o.matrix, "Matrix file (text or JSON), '-' for stdin")->required();
    norm->add_option("--p", o.p, "Exponent: decimal >= 1 or 'inf'")->required();
    o.method = "auto";
    norm->add_option("--method", o.method, "auto|exact|estimate|oracle")
        ->check(CLI::IsMember({"auto", "exact", "estimate", "oracle"}));
    norm->add_option("--restarts", o.restarts, "Power-method restarts (default 8 + 2n)")->check(CLI::NonNegativeNumber);
    norm->add_option("--grid", o.grid, "Oracle grid resolution (>= 360)");
    add_seed(norm);

    auto* decompose = app.add_subcommand("decompose", "Birkhoff decomposition of a doubly stochastic matrix");
    decompose->add_option("--matrix", o.matrix, "Matrix file, '-' for stdin")->required();
    decompose->add_option("--tol", o.tol, "Support threshold (default 1e-12)");

    auto* ball = app.add_subcommand("ball", "Minimal enclosing-ball radius of the polytope centred at a matrix");
    ball->add_option("--matrix", o.matrix, "Matrix file, '-' for stdin")->required();
    ball->add_option("--p", o.p, "Exponent: decimal >= 1 or 'inf'")->required();
    ball->add_option("--restarts", o.restarts, "Power-method restarts");
    add_seed(ball);

    auto* radius = app.add_subcommand("radius", "Chebyshev radius of the Birkhoff polytope");
    radius->add_option("--n", o.n, "Dimension")->required();
    radius->add_option("--p", o.p, "Exponent: decimal >= 1 or 'inf'")->required();
    radius->add_option("--method", o.method, "auto|exact|conjecture|enumerate|bounds")
        ->check(CLI::IsMember({"auto", "exact", "conjecture", "enumerate", "bounds"}));
    radius->add_option("--restarts", o.restarts, "Power-method restarts");
    add_seed(radius);

    auto* verify = app.add_subcommand("verify", "Certificates and identity checks");
    verify->require_subcommand(1);
    auto* center = verify->add_subcommand("center", "Is the matrix a Chebyshev centre candidate?");
    center->add_option("--matrix", o.matrix, "Matrix file, '-' for stdin")->required();
    center->add_option("--p", o.p, "Exponent")->required();
    center->add_option("--tol", o.tol, "Acceptance slack (default 1e-9 exact p, 1e-6 otherwise)");
    center->add_option("--restarts", o.restarts, "Power-method restarts");
    add_seed(center);
    auto* spectrum = verify->add_subcommand("spectrum", "Characteristic-polynomial identity for D - J_n");
    spectrum->add_option("--matrix", o.matrix, "Matrix file, '-' for stdin")->required();
    spectrum->add_option("--tol", o.tol, "Relative coefficient tolerance (default 1e-8)");
    auto* equidistance = verify->add_subcommand("equidistance", "Is J_n equidistant from every permutation?");
    equidistance->add_option("--n", o.n, "Dimension (<= 6)")->required();
    equidistance->add_option("--p", o.p, "Exponent")->required();
    equidistance->add_option("--restarts", o.restarts, "Power-method restarts");
    add_seed(equidistance);

    auto* sample = app.add_subcommand("sample", "Random doubly stochastic matrix in the text format");
    sample->add_option("--n", o.n, "Dimension")->required();
    std::string sample_method = "sinkhorn";
    sample->add_option("--method", sample_method, "sinkhorn|mixture")->check(CLI::IsMember({"sinkhorn", "mixture"}));
    sample->add_option("--k", o.k, "Mixture terms")->check(CLI::PositiveNumber);
    add_seed(sample);

    auto* curve = app.add_subcommand("curve", "TSV table of the radius against p");
    curve->add_option("--n", o.n, "Dimension")->required();
    curve->add_option("--p-grid", o.p_grid, "START:STOP:COUNT")->required();
    curve->add_option("--restarts", o.restarts, "Power-method restarts");
    add_seed(curve);

    std::vector<const char*> argv{"bpgeo"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        for (const auto* opt : seed_options)
            if (opt->count() > 0) o.seed = seed_value;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n\n";
        const CLI::App* failed = &app;
        for (auto* sub : app.get_subcommands()) {
            failed = sub;
            for (auto* nested : sub->get_subcommands()) failed = nested;
        }
        err << failed->help();
        return kExitUsage;
    }

    try {
        if (norm->parsed()) return cmd_norm(o, out, in);
        if (decompose->parsed()) return cmd_decompose(o, out, in);
        if (ball->parsed()) return cmd_ball(o, out, in);
        if (radius->parsed()) {
            if (o.method.empty()) o.method = "auto";
            return cmd_radius(o, out);
        }
        if (center->parsed()) return cmd_verify_center(o, out, in);
        if (spectrum->parsed()) return cmd_verify_spectrum(o, out, in);
        if (equidistance->parsed()) return cmd_verify_equidistance(o, out);
        if (sample->parsed()) {
            o.method = sample_method;
            return cmd_sample(o, out);
        }
        if (curve->parsed()) return cmd_curve(o, out);
    } catch (const Error& e) {
        out << json{{"error", to_string(e.code())}, {"detail", e.detail()}}.dump(2) << '\n';
        return kExitComputation;
    } catch (const std::exception& e) {
        out << json{{"error", "internal"}, {"detail", e.what()}}.dump(2) << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}

}  // namespace bpgeo::cli
