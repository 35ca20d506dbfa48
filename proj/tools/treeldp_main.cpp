// treeldp: command-line front door for the tree-walk large-deviation toolkit.
//
// Subcommands cover simulation, exact distance-chain distributions, the
// coupling check, checkpointed log-MGF tables, Fenchel-Legendre conjugates,
// the closed-form endpoint rate, path functionals, the concatenation battery,
// Monte Carlo / tilted rate estimates, and the acceptance suite.
//
// Exit codes: 0 success, 2 config error, 3 enumeration cap exceeded,
// 4 acceptance-style failure. TREELDP_SEED sets the default seed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeldp/acceptance.hpp"
#include "treeldp/distance_chain.hpp"
#include "treeldp/errors.hpp"
#include "treeldp/io.hpp"
#include "treeldp/legendre.hpp"
#include "treeldp/mgf.hpp"
#include "treeldp/montecarlo.hpp"
#include "treeldp/path_concat.hpp"
#include "treeldp/sample_path.hpp"
#include "treeldp/version.hpp"
#include "treeldp/walk.hpp"

namespace {

using nlohmann::json;
using namespace treeldp;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TREELDP_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 1u;
}

// Output sink: "-" means stdout.
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Sink(const std::string& path) {
        if (path != "-") {
            file.open(path, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

StepDistribution make_mu(int d, const std::vector<double>& probs) {
    if (probs.empty()) return StepDistribution::uniform(d);
    return StepDistribution(d, probs);
}

std::string fd(double v) { return io::format_double(v); }

// Values from a JSON config file fill in options the command line left unset.
json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    in >> j;
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    return j;
}

template <typename T>
void from_config(CLI::App* sub, const json& cfg, const std::string& key, T& var) {
    if (sub->count("--" + key) == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
}

struct CommonArgs {
    std::string config_path;
    std::string out = "-";
    std::string format = "csv";
    std::uint64_t seed = default_seed();
};

void add_common(CLI::App* sub, CommonArgs& args, bool with_format = true) {
    sub->add_option("--config", args.config_path, "JSON config file; flags override its values");
    sub->add_option("--out", args.out, "output path, - for stdout")->capture_default_str();
    if (with_format)
        sub->add_option("--format", args.format, "csv or json")->capture_default_str();
    sub->add_option("--seed", args.seed, "rng seed (default from TREELDP_SEED)")
        ->capture_default_str();
}

int emit_error_json(const std::string& type, const std::string& message, int code) {
    json err;
    err["error"] = {{"type", type}, {"message", message}};
    std::cout << err.dump(2) << "\n";
    return code;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------
int cmd_simulate(int d, const std::vector<double>& mu_probs, int n, int paths,
                 const CommonArgs& args) {
    StepDistribution mu = make_mu(d, mu_probs);
    io::Manifest manifest;
    manifest.command = "simulate";
    manifest.seed = args.seed;
    manifest.config = {{"d", d},       {"mu", mu.probs()}, {"n", n},
                       {"paths", paths}, {"seed", args.seed}, {"format", args.format}};
    Sink sink(args.out);
    if (args.format == "json") {
        json arr = json::array();
        for (int p = 0; p < paths; ++p) {
            LatticePath walk = simulate_walk(mu, n, block_seed(args.seed, p));
            StepFunctionPath z = StepFunctionPath::from_walk(walk);
            json rec;
            rec["path_id"] = p;
            json ts = json::array(), vs = json::array();
            for (int i = 0; i <= n; ++i) {
                ts.push_back(static_cast<double>(i) / n);
                vs.push_back(z.value(static_cast<std::size_t>(i)));
            }
            rec["t"] = std::move(ts);
            rec["value"] = std::move(vs);
            arr.push_back(std::move(rec));
        }
        io::write_json(sink.stream(), manifest, arr);
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (int p = 0; p < paths; ++p) {
        LatticePath walk = simulate_walk(mu, n, block_seed(args.seed, p));
        StepFunctionPath z = StepFunctionPath::from_walk(walk);
        for (int i = 0; i <= n; ++i) {
            rows.push_back({std::to_string(p), fd(static_cast<double>(i) / n),
                            fd(z.value(static_cast<std::size_t>(i)))});
        }
    }
    io::write_csv(sink.stream(), manifest, {"path_id", "t", "value"}, rows);
    return 0;
}

// ---------------------------------------------------------------------------
// dist
// ---------------------------------------------------------------------------
int cmd_dist(const std::string& kind, int d, const std::vector<double>& mu_probs, int n,
             bool exact, const CommonArgs& args) {
    io::Manifest manifest;
    manifest.command = "dist";
    manifest.seed = args.seed;
    manifest.config = {{"kind", kind}, {"d", d}, {"n", n}, {"exact", exact}};
    if (!mu_probs.empty()) manifest.config["mu"] = mu_probs;
    Sink sink(args.out);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    if (kind == "biased") {
        header = {"position", "probability"};
        if (exact) {
            auto probs = biased_walk_dist_exact(d, n);
            for (int i = 0; i <= 2 * n; ++i)
                rows.push_back({std::to_string(i - n),
                                fd(static_cast<double>(probs[static_cast<std::size_t>(i)]))});
        } else {
            SignedDistribution s = biased_walk_dist(d, n);
            for (int i = 0; i <= 2 * n; ++i)
                rows.push_back({std::to_string(i - n), fd(s.probs[static_cast<std::size_t>(i)])});
        }
    } else {
        header = {"distance", "probability"};
        DistanceDistribution dist;
        if (kind == "simple") {
            dist = simple_walk_distance_dist(d, n);
            if (exact) {
                auto probs = simple_walk_distance_dist_exact(d, n);
                for (std::size_t k = 0; k < probs.size(); ++k)
                    dist.probs[k] = static_cast<double>(probs[k]);
            }
        } else if (kind == "abs") {
            dist = abs_pushforward(biased_walk_dist(d, n));
        } else if (kind == "brute") {
            dist = brute_force_distance_dist(make_mu(d, mu_probs), n);
        } else {
            throw std::invalid_argument("dist: unknown kind " + kind);
        }
        for (int k = 0; k <= dist.support_max; ++k)
            rows.push_back({std::to_string(k), fd(dist.prob(k))});
    }
    io::write_csv(sink.stream(), manifest, header, rows);
    return 0;
}

// ---------------------------------------------------------------------------
// couple-check
// ---------------------------------------------------------------------------
int cmd_couple_check(int d, int n, const CommonArgs& args) {
    double worst = 0.0;
    for (int m = 0; m <= n; ++m) {
        DistanceDistribution folded = abs_pushforward(biased_walk_dist(d, m));
        DistanceDistribution direct = simple_walk_distance_dist(d, m);
        for (int k = 0; k <= m; ++k)
            worst = std::max(worst, std::abs(folded.prob(k) - direct.prob(k)));
    }
    bool pass = worst <= 1e-12;
    io::Manifest manifest;
    manifest.command = "couple-check";
    manifest.seed = args.seed;
    manifest.config = {{"d", d}, {"n", n}};
    Sink sink(args.out);
    json payload = {{"max_abs_diff", io::json_real(worst)}, {"tolerance", 1e-12}, {"pass", pass}};
    io::write_json(sink.stream(), manifest, payload);
    std::cerr << "couple-check d=" << d << " n<=" << n << ": max abs diff " << fd(worst)
              << (pass ? " <= 1e-12\n" : " EXCEEDS 1e-12\n");
    return pass ? 0 : 4;
}

// ---------------------------------------------------------------------------
// mgf
// ---------------------------------------------------------------------------
int cmd_mgf(int d, const std::vector<double>& times, double lo, double hi, int points,
            const std::vector<int>& n_list, const CommonArgs& args) {
    TimeGrid J(times);
    MgfTable table = build_mgf_table_simple(d, J, LambdaGrid::uniform(J.size(), lo, hi,
                                                                      static_cast<std::size_t>(points)),
                                            n_list);
    io::Manifest manifest;
    manifest.command = "mgf";
    manifest.seed = args.seed;
    manifest.config = {{"d", d},
                       {"J", times},
                       {"lambda_min", lo},
                       {"lambda_max", hi},
                       {"lambda_points", points},
                       {"n_list", n_list},
                       {"extrapolation_model", table.extrapolation_model}};
    Sink sink(args.out);
    if (args.format == "json") {
        io::write_json(sink.stream(), manifest, io::to_json(table));
        return 0;
    }
    std::vector<std::string> header;
    for (std::size_t k = 0; k < J.size(); ++k) header.push_back("lambda" + std::to_string(k + 1));
    for (int n : table.n_values) header.push_back("value_n" + std::to_string(n));
    header.emplace_back("extrapolated");
    header.emplace_back("halfwidth");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t p = 0; p < table.lambda_grid.num_points(); ++p) {
        std::vector<std::string> row;
        for (double l : table.lambda_grid.point(p)) row.push_back(fd(l));
        for (std::size_t ni = 0; ni < table.n_values.size(); ++ni)
            row.push_back(fd(table.values_by_n[ni][p]));
        row.push_back(fd(table.extrapolated[p]));
        row.push_back(fd(table.halfwidth[p]));
        rows.push_back(std::move(row));
    }
    io::write_csv(sink.stream(), manifest, header, rows);
    return 0;
}

// ---------------------------------------------------------------------------
// conjugate
// ---------------------------------------------------------------------------
std::vector<double> linspace_axis(double lo, double hi, int points) {
    std::vector<double> axis;
    for (int i = 0; i < points; ++i)
        axis.push_back(lo + (hi - lo) * static_cast<double>(i) / (points - 1));
    return axis;
}

void write_rate_grid(const RateGrid& grid, const io::Manifest& manifest, const std::string& format,
                     Sink& sink) {
    if (format == "json") {
        io::write_json(sink.stream(), manifest, io::to_json(grid));
        return;
    }
    std::vector<std::string> header;
    for (std::size_t k = 0; k < grid.dim(); ++k) header.push_back("x" + std::to_string(k + 1));
    header.emplace_back("value");
    for (std::size_t k = 0; k < grid.dim(); ++k)
        header.push_back("argmax_lambda" + std::to_string(k + 1));
    header.emplace_back("boundary_flag");
    header.emplace_back("resolution_gap");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t p = 0; p < grid.num_points(); ++p) {
        std::vector<std::string> row;
        for (double x : grid.point(p)) row.push_back(fd(x));
        row.push_back(fd(grid.values[p]));
        for (double l : grid.argmax_lambda[p]) row.push_back(fd(l));
        row.push_back(grid.boundary_flag[p] ? "1" : "0");
        row.push_back(fd(grid.resolution_gap[p]));
        rows.push_back(std::move(row));
    }
    io::write_csv(sink.stream(), manifest, header, rows);
}

int cmd_conjugate(const std::string& in_path, double xlo, double xhi, int xpoints,
                  const CommonArgs& args) {
    std::ifstream in(in_path);
    if (!in) throw std::invalid_argument("conjugate: cannot open " + in_path);
    json doc;
    in >> doc;
    MgfTable table = io::mgf_table_from_json(doc.at("data"));
    std::vector<std::vector<double>> axes(table.lambda_grid.dim(),
                                          linspace_axis(xlo, xhi, xpoints));
    RateGrid grid = conjugate(table, axes);
    io::Manifest manifest;
    manifest.command = "conjugate";
    manifest.seed = args.seed;
    manifest.config = {{"in", in_path}, {"x_min", xlo}, {"x_max", xhi}, {"x_points", xpoints}};
    Sink sink(args.out);
    write_rate_grid(grid, manifest, args.format, sink);
    return 0;
}

// ---------------------------------------------------------------------------
// lambda-star
// ---------------------------------------------------------------------------
int cmd_lambda_star(int d, double lo, double hi, double step, const CommonArgs& args) {
    io::Manifest manifest;
    manifest.command = "lambda-star";
    manifest.seed = args.seed;
    manifest.config = {{"d", d}, {"x_min", lo}, {"x_max", hi}, {"step", step}};
    Sink sink(args.out);
    std::vector<double> xs;
    for (double x = lo; x <= hi + 1e-12; x += step) xs.push_back(x);
    double esc = escape_rate(d);
    if (esc >= lo && esc <= hi) xs.push_back(esc);  // exact zero row
    std::sort(xs.begin(), xs.end());
    std::vector<std::vector<std::string>> rows;
    for (double x : xs) rows.push_back({fd(x), fd(lambda_star_closed_form(d, x))});
    io::write_csv(sink.stream(), manifest, {"x", "value"}, rows);
    return 0;
}

// ---------------------------------------------------------------------------
// rate-endpoint
// ---------------------------------------------------------------------------
int cmd_rate_endpoint(int d, const std::vector<int>& n_list, int lambda_points, double xlo,
                      double xhi, int xpoints, const CommonArgs& args) {
    MgfTable table = build_mgf_table_simple(
        d, TimeGrid({1.0}),
        LambdaGrid::uniform(1, -8.0, 8.0, static_cast<std::size_t>(lambda_points)), n_list);
    std::vector<double> axis = linspace_axis(xlo, xhi, xpoints);
    RateGrid grid = conjugate(table, {axis});
    io::Manifest manifest;
    manifest.command = "rate-endpoint";
    manifest.seed = args.seed;
    manifest.config = {{"d", d},           {"n_list", n_list},   {"lambda_points", lambda_points},
                       {"x_min", xlo},     {"x_max", xhi},       {"x_points", xpoints}};
    Sink sink(args.out);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < axis.size(); ++i) {
        double closed = lambda_star_closed_form(d, axis[i]);
        double got = grid.values[i];
        rows.push_back({fd(axis[i]), fd(got), fd(closed), fd(std::abs(got - closed)),
                        grid.boundary_flag[i] ? "1" : "0"});
    }
    io::write_csv(sink.stream(), manifest,
                  {"x", "conjugate", "closed_form", "abs_diff", "boundary_flag"}, rows);
    return 0;
}

// ---------------------------------------------------------------------------
// rate-path
// ---------------------------------------------------------------------------
PolygonalPath parse_breakpoints(const std::string& text) {
    std::vector<double> ts, vs;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("breakpoints: expected t:v pairs separated by commas");
        ts.push_back(std::stod(part.substr(0, colon)));
        vs.push_back(std::stod(part.substr(colon + 1)));
    }
    return PolygonalPath(std::move(ts), std::move(vs));
}

int cmd_rate_path(int d, const std::string& breakpoints, const CommonArgs& args) {
    PolygonalPath f = parse_breakpoints(breakpoints);
    io::Manifest manifest;
    manifest.command = "rate-path";
    manifest.seed = args.seed;
    manifest.config = {{"d", d}, {"breakpoints", breakpoints}};
    Sink sink(args.out);
    json variants = json::array();
    for (RateVariant variant : {RateVariant::paper_literal, RateVariant::increment_rate}) {
        RateFunctionalReport report = mogulskii_rate_simple(d, f, variant);
        json contribs = json::array();
        for (double c : report.segment_contributions) contribs.push_back(io::json_real(c));
        variants.push_back({{"variant", variant_name(variant)},
                            {"value", io::json_real(report.value)},
                            {"segment_contributions", std::move(contribs)},
                            {"flags",
                             {{"starts_at_zero", report.starts_at_zero},
                              {"lipschitz_ok", report.lipschitz_ok},
                              {"nonnegative", report.nonnegative},
                              {"sup_norm_le_1", report.sup_norm_le_1}}}});
    }
    io::write_json(sink.stream(), manifest, {{"variants", std::move(variants)}});
    return 0;
}

// ---------------------------------------------------------------------------
// concat-verify
// ---------------------------------------------------------------------------
int cmd_concat_verify(int d, int n, double t1, double t2, double x1, double x2, double rho,
                      double rho_prime, const std::vector<int>& k_list, int tuples,
                      std::int64_t samples, bool enumerate, const CommonArgs& args) {
    StepDistribution mu = StepDistribution::uniform(d);
    BoxSpec spec(TimeGrid({t1, t2}), {x1, x2}, rho);
    json payload;
    ConcatPlan plan;
    if (enumerate) {
        BoxSetResult box = box_set(mu, spec, n);
        if (box.paths.empty()) {
            payload["box"] = {{"paths", 0}, {"measure", 0.0}};
            io::Manifest manifest;
            manifest.command = "concat-verify";
            manifest.seed = args.seed;
            Sink sink(args.out);
            io::write_json(sink.stream(), manifest, payload);
            return 0;
        }
        SelectResult sel = select_class(box.paths, mu, spec.J, n);
        payload["box"] = {{"paths", box.paths.size()}, {"measure", box.measure}};
        payload["class"] = {{"measure", sel.class_measure},
                            {"total_measure", sel.total_measure},
                            {"num_classes", sel.num_classes},
                            {"bound_ok", sel.bound_ok},
                            {"members", sel.plan.members.size()}};
        plan = std::move(sel.plan);
    } else {
        plan = harvest_class_by_sampling(mu, spec, n, samples, args.seed);
        payload["class"] = {{"members", plan.members.size()},
                            {"sampled", true},
                            {"note", "measure bound not checked in sampled mode"}};
    }
    payload["key"] = {{"L0", plan.key.L0}, {"L1", plan.key.L1}, {"L2", plan.key.L2},
                      {"m1", plan.key.m1}, {"m2", plan.key.m2},
                      {"loop_case", plan.key.loop_case}, {"letters", plan.key.letters}};
    payload["separators"] = {{"a", plan.a.index}, {"b", plan.b.index}, {"c", plan.c.index},
                             {"c_fallback_used", plan.c_fallback_used}};
    json batteries = json::array();
    bool all_ok = true;
    for (int k : k_list) {
        ContainmentReport report =
            verify_containment(plan, k, spec, rho_prime, n, tuples, block_seed(args.seed, k));
        json tuple_rows = json::array();
        for (const auto& rec : report.tuples) {
            tuple_rows.push_back({{"members", rec.member_idx},
                                  {"step_length", rec.step_length},
                                  {"projection", rec.projection},
                                  {"contained", rec.contained}});
        }
        if (report.hypothesis_ok && report.num_pass != report.tuples.size()) all_ok = false;
        batteries.push_back({{"k", k},
                             {"hypothesis_ok", report.hypothesis_ok},
                             {"n_required", report.n_required},
                             {"num_pass", report.num_pass},
                             {"num_tuples", report.tuples.size()},
                             {"tuples", std::move(tuple_rows)}});
    }
    payload["batteries"] = std::move(batteries);
    payload["all_contained_under_hypothesis"] = all_ok;
    io::Manifest manifest;
    manifest.command = "concat-verify";
    manifest.seed = args.seed;
    manifest.config = {{"d", d},     {"n", n},       {"t1", t1},       {"t2", t2},
                       {"x1", x1},   {"x2", x2},     {"rho", rho},     {"rho_prime", rho_prime},
                       {"k_list", k_list}, {"tuples", tuples}, {"samples", samples},
                       {"enumerate", enumerate}, {"seed", args.seed}};
    Sink sink(args.out);
    io::write_json(sink.stream(), manifest, payload);
    return 0;
}

// ---------------------------------------------------------------------------
// mc-rate
// ---------------------------------------------------------------------------
int cmd_mc_rate(int d, const std::vector<double>& mu_probs, const std::vector<int>& n_list,
                const std::vector<double>& times, const std::vector<double>& x, double rho,
                std::int64_t samples, std::optional<double> tilt, const CommonArgs& args) {
    StepDistribution mu = make_mu(d, mu_probs);
    BoxSpec spec(TimeGrid(times), x, rho);
    McConfig cfg{mu, n_list.front(), samples, args.seed, tilt};
    RateEstimate est = n_list.size() == 1
                           ? (tilt ? tilted_estimate(cfg, spec) : estimate_box(cfg, spec))
                           : convergence_sweep(cfg, spec, n_list);
    io::Manifest manifest;
    manifest.command = "mc-rate";
    manifest.seed = args.seed;
    manifest.config = {{"d", d},      {"mu", mu.probs()}, {"n_list", n_list},
                       {"J", times},  {"x", x},           {"rho", rho},
                       {"samples", samples}, {"seed", args.seed}};
    if (tilt) manifest.config["tilt"] = *tilt;
    Sink sink(args.out);
    io::write_json(sink.stream(), manifest, io::to_json(est));
    return 0;
}

// ---------------------------------------------------------------------------
// acceptance
// ---------------------------------------------------------------------------
int cmd_acceptance(const CommonArgs& args) {
    std::vector<CriterionResult> results = run_acceptance_suite(std::cerr);
    json arr = json::array();
    for (const auto& r : results) {
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail},
                       {"seconds", r.seconds}});
    }
    bool ok = all_passed(results);
    io::Manifest manifest;
    manifest.command = "acceptance";
    manifest.seed = args.seed;
    Sink sink(args.out);
    io::write_json(sink.stream(), manifest, {{"criteria", std::move(arr)}, {"all_pass", ok}});
    return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tree-walk large deviations toolkit (version " TREELDP_VERSION ")"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "simulate rescaled distance paths to CSV/JSON");
    CommonArgs sim_args;
    int sim_d = 3, sim_n = 100, sim_paths = 1;
    std::vector<double> sim_mu;
    sim->add_option("--d", sim_d, "degree (>= 3)")->capture_default_str();
    sim->add_option("--mu", sim_mu, "step probabilities (default uniform)");
    sim->add_option("--n", sim_n, "number of steps")->capture_default_str();
    sim->add_option("--paths", sim_paths, "number of paths")->capture_default_str();
    add_common(sim, sim_args);

    // dist
    auto* dist = app.add_subcommand("dist", "exact distance distributions");
    CommonArgs dist_args;
    std::string dist_kind = "simple";
    int dist_d = 3, dist_n = 10;
    bool dist_exact = false;
    std::vector<double> dist_mu;
    dist->add_option("--kind", dist_kind, "simple | biased | abs | brute")->capture_default_str();
    dist->add_option("--d", dist_d, "degree")->capture_default_str();
    dist->add_option("--n", dist_n, "time index")->capture_default_str();
    dist->add_option("--mu", dist_mu, "step probabilities (brute only)");
    dist->add_flag("--exact", dist_exact, "exact rational DP (n <= 64), emitted as doubles");
    add_common(dist, dist_args);

    // couple-check
    auto* couple = app.add_subcommand("couple-check", "folded biased walk vs distance chain");
    CommonArgs couple_args;
    int couple_d = 3, couple_n = 200;
    couple->add_option("--d", couple_d, "degree")->capture_default_str();
    couple->add_option("--n", couple_n, "check all times up to n")->capture_default_str();
    add_common(couple, couple_args, false);

    // mgf
    auto* mgf_cmd = app.add_subcommand("mgf", "checkpointed log-MGF table (uniform walk)");
    CommonArgs mgf_args;
    int mgf_d = 3, mgf_points = 65;
    double mgf_lo = -8.0, mgf_hi = 8.0;
    std::vector<double> mgf_times{1.0};
    std::vector<int> mgf_nlist{200, 400, 800, 1600};
    mgf_cmd->add_option("--d", mgf_d, "degree")->capture_default_str();
    mgf_cmd->add_option("--J", mgf_times, "checkpoint times in (0,1]")->capture_default_str();
    mgf_cmd->add_option("--lambda-min", mgf_lo, "grid lower bound")->capture_default_str();
    mgf_cmd->add_option("--lambda-max", mgf_hi, "grid upper bound")->capture_default_str();
    mgf_cmd->add_option("--lambda-points", mgf_points, "points per axis")->capture_default_str();
    mgf_cmd->add_option("--n-list", mgf_nlist, "time horizons (>= 4 for extrapolation)")
        ->capture_default_str();
    add_common(mgf_cmd, mgf_args);

    // conjugate
    auto* conj = app.add_subcommand("conjugate", "Fenchel-Legendre transform of an MGF table");
    CommonArgs conj_args;
    std::string conj_in;
    double conj_xlo = 0.0, conj_xhi = 1.0;
    int conj_xpoints = 101;
    conj->add_option("--in", conj_in, "MGF table JSON (from `mgf --format json`)")->required();
    conj->add_option("--x-min", conj_xlo, "x grid lower bound")->capture_default_str();
    conj->add_option("--x-max", conj_xhi, "x grid upper bound")->capture_default_str();
    conj->add_option("--x-points", conj_xpoints, "x grid points per axis")->capture_default_str();
    add_common(conj, conj_args);

    // lambda-star
    auto* lstar = app.add_subcommand("lambda-star", "closed-form endpoint rate function");
    CommonArgs lstar_args;
    int lstar_d = 3;
    double lstar_lo = 0.0, lstar_hi = 1.0, lstar_step = 0.01;
    lstar->add_option("--d", lstar_d, "degree")->capture_default_str();
    lstar->add_option("--x-min", lstar_lo, "")->capture_default_str();
    lstar->add_option("--x-max", lstar_hi, "")->capture_default_str();
    lstar->add_option("--step", lstar_step, "")->capture_default_str();
    add_common(lstar, lstar_args);

    // rate-endpoint
    auto* rate_ep = app.add_subcommand("rate-endpoint",
                                       "conjugate vs closed-form comparison table");
    CommonArgs rate_ep_args;
    int rate_ep_d = 3, rate_ep_lpoints = 129, rate_ep_xpoints = 20;
    double rate_ep_xlo = 0.0, rate_ep_xhi = 0.95;
    std::vector<int> rate_ep_nlist{200, 400, 800, 1600};
    rate_ep->add_option("--d", rate_ep_d, "degree")->capture_default_str();
    rate_ep->add_option("--n-list", rate_ep_nlist, "")->capture_default_str();
    rate_ep->add_option("--lambda-points", rate_ep_lpoints, "")->capture_default_str();
    rate_ep->add_option("--x-min", rate_ep_xlo, "")->capture_default_str();
    rate_ep->add_option("--x-max", rate_ep_xhi, "")->capture_default_str();
    rate_ep->add_option("--x-points", rate_ep_xpoints, "")->capture_default_str();
    add_common(rate_ep, rate_ep_args);

    // rate-path
    auto* rate_path = app.add_subcommand("rate-path", "path functional, both variants");
    CommonArgs rate_path_args;
    int rate_path_d = 3;
    std::string rate_path_bps = "0:0,1:0.333333";
    rate_path->add_option("--d", rate_path_d, "degree")->capture_default_str();
    rate_path->add_option("--breakpoints", rate_path_bps, "comma list of t:value pairs")
        ->capture_default_str();
    add_common(rate_path, rate_path_args, false);

    // concat-verify
    auto* concat = app.add_subcommand("concat-verify", "concatenation battery report");
    CommonArgs concat_args;
    int concat_d = 3, concat_n = 40, concat_tuples = 200;
    double concat_t1 = 0.5, concat_t2 = 1.0, concat_x1 = 0.17, concat_x2 = 0.34;
    double concat_rho = 0.1, concat_rho_prime = 0.75;
    std::vector<int> concat_ks{2, 3};
    std::int64_t concat_samples = 40000;
    bool concat_enum = false;
    concat->add_option("--d", concat_d, "degree")->capture_default_str();
    concat->add_option("--n", concat_n, "member step count")->capture_default_str();
    concat->add_option("--t1", concat_t1, "")->capture_default_str();
    concat->add_option("--t2", concat_t2, "")->capture_default_str();
    concat->add_option("--x1", concat_x1, "")->capture_default_str();
    concat->add_option("--x2", concat_x2, "")->capture_default_str();
    concat->add_option("--rho", concat_rho, "")->capture_default_str();
    concat->add_option("--rho-prime", concat_rho_prime, "")->capture_default_str();
    concat->add_option("--k-list", concat_ks, "tuple sizes")->capture_default_str();
    concat->add_option("--tuples", concat_tuples, "tuples per k")->capture_default_str();
    concat->add_option("--samples", concat_samples, "harvest samples (sampled mode)")
        ->capture_default_str();
    concat->add_flag("--enumerate", concat_enum,
                     "enumerate the box instead of sampling (checks the measure bound)");
    add_common(concat, concat_args, false);

    // mc-rate
    auto* mc = app.add_subcommand("mc-rate", "Monte Carlo / tilted box-rate estimates");
    CommonArgs mc_args;
    int mc_d = 3;
    std::vector<double> mc_mu, mc_times{1.0}, mc_x{0.5};
    std::vector<int> mc_nlist{500};
    double mc_rho = 0.05;
    std::int64_t mc_samples = 100000;
    double mc_tilt_value = 0.0;
    bool mc_has_tilt = false;
    mc->add_option("--d", mc_d, "degree")->capture_default_str();
    mc->add_option("--mu", mc_mu, "step probabilities (default uniform)");
    mc->add_option("--n-list", mc_nlist, "one or more horizons")->capture_default_str();
    mc->add_option("--J", mc_times, "checkpoint times")->capture_default_str();
    mc->add_option("--x", mc_x, "box center")->capture_default_str();
    mc->add_option("--rho", mc_rho, "box radius")->capture_default_str();
    mc->add_option("--samples", mc_samples, "")->capture_default_str();
    mc->add_option("--tilt", mc_tilt_value, "exponential tilt (uniform mu, endpoint J only)")
        ->each([&](const std::string&) { mc_has_tilt = true; });
    add_common(mc, mc_args, false);

    // acceptance
    auto* acc = app.add_subcommand("acceptance", "run the acceptance suite, emit pass/fail JSON");
    CommonArgs acc_args;
    add_common(acc, acc_args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) {
            json cfg = load_config(sim_args.config_path);
            from_config(sim, cfg, "d", sim_d);
            from_config(sim, cfg, "mu", sim_mu);
            from_config(sim, cfg, "n", sim_n);
            from_config(sim, cfg, "paths", sim_paths);
            from_config(sim, cfg, "seed", sim_args.seed);
            return cmd_simulate(sim_d, sim_mu, sim_n, sim_paths, sim_args);
        }
        if (dist->parsed()) {
            json cfg = load_config(dist_args.config_path);
            from_config(dist, cfg, "kind", dist_kind);
            from_config(dist, cfg, "d", dist_d);
            from_config(dist, cfg, "n", dist_n);
            from_config(dist, cfg, "mu", dist_mu);
            return cmd_dist(dist_kind, dist_d, dist_mu, dist_n, dist_exact, dist_args);
        }
        if (couple->parsed()) return cmd_couple_check(couple_d, couple_n, couple_args);
        if (mgf_cmd->parsed()) {
            json cfg = load_config(mgf_args.config_path);
            from_config(mgf_cmd, cfg, "d", mgf_d);
            from_config(mgf_cmd, cfg, "J", mgf_times);
            from_config(mgf_cmd, cfg, "n-list", mgf_nlist);
            return cmd_mgf(mgf_d, mgf_times, mgf_lo, mgf_hi, mgf_points, mgf_nlist, mgf_args);
        }
        if (conj->parsed())
            return cmd_conjugate(conj_in, conj_xlo, conj_xhi, conj_xpoints, conj_args);
        if (lstar->parsed())
            return cmd_lambda_star(lstar_d, lstar_lo, lstar_hi, lstar_step, lstar_args);
        if (rate_ep->parsed())
            return cmd_rate_endpoint(rate_ep_d, rate_ep_nlist, rate_ep_lpoints, rate_ep_xlo,
                                     rate_ep_xhi, rate_ep_xpoints, rate_ep_args);
        if (rate_path->parsed()) return cmd_rate_path(rate_path_d, rate_path_bps, rate_path_args);
        if (concat->parsed())
            return cmd_concat_verify(concat_d, concat_n, concat_t1, concat_t2, concat_x1,
                                     concat_x2, concat_rho, concat_rho_prime, concat_ks,
                                     concat_tuples, concat_samples, concat_enum, concat_args);
        if (mc->parsed())
            return cmd_mc_rate(mc_d, mc_mu, mc_nlist, mc_times, mc_x, mc_rho, mc_samples,
                               mc_has_tilt ? std::optional<double>(mc_tilt_value) : std::nullopt,
                               mc_args);
        if (acc->parsed()) return cmd_acceptance(acc_args);
    } catch (const cap_exceeded_error& e) {
        return emit_error_json("cap_exceeded", e.what(), 3);
    } catch (const coverage_error& e) {
        return emit_error_json("coverage_error", e.what(), 2);
    } catch (const insufficient_data_error& e) {
        return emit_error_json("insufficient_data", e.what(), 2);
    } catch (const std::invalid_argument& e) {
        return emit_error_json("config_error", e.what(), 2);
    } catch (const std::domain_error& e) {
        return emit_error_json("config_error", e.what(), 2);
    } catch (const std::exception& e) {
        return emit_error_json("internal_error", e.what(), 1);
    }
    return 2;
}
