// Batch experiment runner: builds systems, runs counting sweeps, fits
// exponents, and drives the congruence, Weyl and iteration surfaces, emitting
// reproducible CSV/JSON artifacts.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdi/config_hash.hpp"
#include "tdi/congruence.hpp"
#include "tdi/counting.hpp"
#include "tdi/families.hpp"
#include "tdi/iteration.hpp"
#include "tdi/system_io.hpp"
#include "tdi/weyl.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

struct GlobalOptions {
    int threads = 0;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool no_elapsed = false;
};

std::string resolve_out_path(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("TDI_OUT_DIR");
    if (dir && *dir && path.front() != '/') return std::string(dir) + "/" + path;
    return path;
}

// Writes to --out (resolved against TDI_OUT_DIR) or stdout.
void emit_output(const GlobalOptions& g, const std::string& content) {
    if (g.out_path.empty()) {
        std::cout << content;
        return;
    }
    std::string path = resolve_out_path(g.out_path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
}

std::string csv_header(const std::string& canonical_config) {
    std::ostringstream os;
    os << "# tdi v" << tdi::kToolVersion << "\n";
    os << "# config " << canonical_config << "\n";
    os << "# config-hash " << tdi::config_hash_hex(canonical_config) << "\n";
    return os.str();
}

void fill_json_meta(json& j, const std::string& canonical_config) {
    j["tool"] = "tdi";
    j["version"] = tdi::kToolVersion;
    j["config"] = canonical_config;
    j["config_hash"] = tdi::config_hash_hex(canonical_config);
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoll(item));
    if (out.empty()) throw tdi::InputError(std::string(what) + ": empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    if (out.empty()) throw tdi::InputError(std::string(what) + ": empty list");
    return out;
}

struct SystemArgs {
    std::string family;
    std::int64_t k = 0, d = 0, l = 0, k1 = 0, k2 = 0;
    std::string spec_path;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--family", family, "family name: vinogradov|parsell|akc|binary");
        cmd->add_option("--k", k, "degree (vinogradov, parsell)");
        cmd->add_option("--d", d, "dimension (parsell, akc)");
        cmd->add_option("--l", l, "per-variable degree (akc)");
        cmd->add_option("--k1", k1, "first exponent (binary)");
        cmd->add_option("--k2", k2, "second exponent (binary)");
        cmd->add_option("--spec,--system", spec_path, "system spec file");
    }

    tdi::FamilySpec family_spec() const {
        tdi::FamilySpec f;
        if (family == "vinogradov") {
            if (k < 1) throw tdi::InputError("vinogradov requires --k >= 1");
            f.kind = tdi::FamilyKind::Vinogradov;
            f.k = k;
        } else if (family == "parsell") {
            if (d < 1 || k < 1) throw tdi::InputError("parsell requires --d and --k");
            f.kind = tdi::FamilyKind::Parsell;
            f.d = d;
            f.k = k;
        } else if (family == "akc") {
            if (d < 1 || l < 1) throw tdi::InputError("akc requires --d and --l");
            f.kind = tdi::FamilyKind::Akc;
            f.d = d;
            f.l = l;
        } else if (family == "binary") {
            if (k1 < 1 || k2 < 1) throw tdi::InputError("binary requires --k1 and --k2");
            f.kind = tdi::FamilyKind::Binary;
            f.k1 = k1;
            f.k2 = k2;
        } else {
            throw tdi::InputError("unknown family '" + family + "'");
        }
        return f;
    }

    // Returns the system plus CSV-friendly (family, params) labels.
    tdi::TdiSystem resolve(std::string& family_label, std::string& params_label) const {
        if (!spec_path.empty()) {
            std::ifstream in(spec_path);
            if (!in) throw tdi::InputError("cannot open spec file " + spec_path);
            tdi::SystemSpecFile spec = tdi::parse_system_spec(in);
            family_label = spec.family ? spec.family->name() : "custom";
            params_label = spec.family ? spec.family->params() : spec_path;
            return tdi::build_from_spec(spec);
        }
        if (family.empty()) throw tdi::InputError("need --family or --spec");
        tdi::FamilySpec f = family_spec();
        family_label = f.name();
        params_label = f.params();
        return tdi::generate_family(f);
    }

    std::string canonical() const {
        if (!spec_path.empty()) return "spec=" + spec_path;
        std::ostringstream os;
        os << "family=" << family;
        if (k) os << " k=" << k;
        if (d) os << " d=" << d;
        if (l) os << " l=" << l;
        if (k1) os << " k1=" << k1;
        if (k2) os << " k2=" << k2;
        return os.str();
    }
};

std::int64_t elapsed_ms_since(std::chrono::steady_clock::time_point start,
                              const GlobalOptions& g) {
    if (g.no_elapsed) return 0;
    auto dt = std::chrono::steady_clock::now() - start;
    return std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
}

// ---------------------------------------------------------------------------
// build / stats

int cmd_build(const GlobalOptions& g, const SystemArgs& sys_args, const std::string& out_file) {
    std::string family_label, params_label;
    tdi::TdiSystem sys = sys_args.resolve(family_label, params_label);

    std::ostringstream report;
    bool have_closed_form = sys_args.spec_path.empty();
    tdi::SystemStats cf;
    if (have_closed_form) cf = tdi::closed_form_stats(sys_args.family_spec());
    report << "r=" << sys.rank();
    if (have_closed_form) report << " (closed-form " << cf.rank.get_str() << ")";
    report << " K=" << sys.weight;
    if (have_closed_form) report << " (closed-form " << cf.weight.get_str() << ")";
    report << "\n";

    std::string emitted = tdi::emit_system(sys);
    // Round-trip check before anything is written.
    tdi::TdiSystem reparsed = tdi::build_from_spec(tdi::parse_system_spec_string(emitted));
    bool roundtrip_ok = reparsed.forms == sys.forms;
    bool stats_ok = !have_closed_form ||
                    (cf.rank == static_cast<long>(sys.rank()) && cf.weight == sys.weight);
    if (!roundtrip_ok || !stats_ok) {
        std::cerr << report.str();
        std::cerr << (stats_ok ? "system file round-trip mismatch" : "closed-form stats mismatch")
                  << "\n";
        return kExitInternal;
    }
    if (!out_file.empty()) {
        std::string path = resolve_out_path(out_file);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + path);
        out << emitted;
    }
    std::cout << report.str();
    return 0;
}

int cmd_stats(const SystemArgs& sys_args) {
    tdi::FamilySpec f = sys_args.family_spec();
    tdi::SystemStats cf = tdi::closed_form_stats(f);
    std::string config = "stats " + sys_args.canonical();
    std::ostringstream os;
    os << csv_header(config);
    os << "family,params,r,K\n";
    os << f.name() << "," << f.params() << "," << cf.rank.get_str() << "," << cf.weight.get_str()
       << "\n";
    std::cout << os.str();
    return 0;
}

// ---------------------------------------------------------------------------
// count / fit / lower-bounds

tdi::ConvStrategy parse_strategy(const std::string& name) {
    if (name == "auto") return tdi::ConvStrategy::Auto;
    if (name == "doubling") return tdi::ConvStrategy::Doubling;
    if (name == "sequential") return tdi::ConvStrategy::Sequential;
    throw tdi::InputError("unknown strategy '" + name + "'");
}

void check_schedule(const std::vector<std::int64_t>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1]) throw tdi::InputError("X schedule must be strictly increasing");
}

int cmd_count(const GlobalOptions& g, const SystemArgs& sys_args, const std::string& s_list,
              const std::string& x_list, const std::string& strategy,
              const std::string& dump_path) {
    std::string family_label, params_label;
    tdi::TdiSystem sys = sys_args.resolve(family_label, params_label);
    std::vector<std::int64_t> ss = parse_int_list(s_list, "--s");
    std::vector<std::int64_t> xs = parse_int_list(x_list, "--X");
    check_schedule(xs);
    if (!dump_path.empty() && (ss.size() != 1 || xs.size() != 1))
        throw tdi::InputError("--dump-table needs a single s and a single X");

    tdi::CountOptions opts;
    opts.strategy = parse_strategy(strategy);
    opts.threads = g.threads;

    std::string config =
        "count " + sys_args.canonical() + " s=" + s_list + " X=" + x_list + " strategy=" + strategy;
    std::ostringstream os;
    os << csv_header(config);
    os << "family,params,s,X,J,elapsed_ms\n";
    for (std::int64_t s : ss) {
        for (std::int64_t X : xs) {
            auto start = std::chrono::steady_clock::now();
            tdi::CountTable table = tdi::value_distribution(sys, static_cast<int>(s), X, opts);
            tdi::BigInt J = table.sum_of_squares();
            os << family_label << "," << params_label << "," << s << "," << X << ","
               << J.get_str() << "," << elapsed_ms_since(start, g) << "\n";
            if (!dump_path.empty()) {
                std::string path = resolve_out_path(dump_path);
                std::ofstream dump(path, std::ios::binary);
                if (!dump) throw std::runtime_error("cannot open dump file " + path);
                dump << table.dump();
            }
        }
    }
    emit_output(g, os.str());
    return 0;
}

int cmd_fit(const GlobalOptions& g, const SystemArgs& sys_args, std::int64_t s,
            const std::string& x_list, const std::string& strategy) {
    std::string family_label, params_label;
    tdi::TdiSystem sys = sys_args.resolve(family_label, params_label);
    std::vector<std::int64_t> xs = parse_int_list(x_list, "--X");
    check_schedule(xs);

    tdi::CountOptions opts;
    opts.strategy = parse_strategy(strategy);
    opts.threads = g.threads;

    std::vector<std::pair<std::int64_t, tdi::BigInt>> samples;
    for (std::int64_t X : xs)
        samples.emplace_back(X, tdi::count_Js(sys, static_cast<int>(s), X, opts));
    tdi::FitResult fit = tdi::fit_exponent(samples);

    std::string config =
        "fit " + sys_args.canonical() + " s=" + std::to_string(s) + " X=" + x_list;
    json j;
    fill_json_meta(j, config);
    j["family"] = family_label;
    j["params"] = params_label;
    j["s"] = s;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["residual"] = fit.residual;
    j["samples"] = json::array();
    for (const auto& [X, J] : fit.samples) j["samples"].push_back({{"X", X}, {"J", J.get_str()}});
    emit_output(g, j.dump(2) + "\n");
    return 0;
}

int cmd_lower_bounds(const GlobalOptions& g, const SystemArgs& sys_args, std::int64_t s,
                     std::int64_t X) {
    std::string family_label, params_label;
    tdi::TdiSystem sys = sys_args.resolve(family_label, params_label);
    tdi::CountOptions opts;
    opts.threads = g.threads;
    tdi::BigInt J = tdi::count_Js(sys, static_cast<int>(s), X, opts);
    std::vector<tdi::BoundTerm> terms = tdi::lower_bound_terms(sys, static_cast<int>(s), X, opts);

    std::string config = "lower-bounds " + sys_args.canonical() + " s=" + std::to_string(s) +
                         " X=" + std::to_string(X);
    std::ostringstream os;
    os << csv_header(config);
    os << "family,params,s,X,term,value,certified,holds,J\n";
    bool violated = false;
    for (const auto& term : terms) {
        bool holds = J >= term.value;
        if (term.certified && !holds) violated = true;
        os << family_label << "," << params_label << "," << s << "," << X << "," << term.label
           << "," << term.value.get_str() << "," << (term.certified ? 1 : 0) << ","
           << (holds ? 1 : 0) << "," << J.get_str() << "\n";
    }
    emit_output(g, os.str());
    if (violated) {
        std::cerr << "certified lower bound violated\n";
        return kExitInternal;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// congruence sweep

struct ManifestEntry {
    tdi::FamilySpec family;
    std::int64_t p = 2;
    int a = 0;
    int b = 1;
    std::vector<std::int64_t> eta;  // empty = zero vector
    std::uint64_t budget = 100'000'000;
};

std::vector<ManifestEntry> parse_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tdi::InputError("cannot open manifest " + path);
    std::vector<ManifestEntry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        ManifestEntry entry;
        bool have_family = false;
        std::stringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ';')) {
            std::size_t fs = field.find_first_not_of(" \t");
            if (fs == std::string::npos) continue;
            std::size_t fe = field.find_last_not_of(" \t");
            field = field.substr(fs, fe - fs + 1);
            auto eq = field.find('=');
            if (eq == std::string::npos)
                throw tdi::ParseError("manifest: expected key=value", lineno);
            std::string key = field.substr(0, eq);
            std::string value = field.substr(eq + 1);
            if (key == "family") {
                entry.family = tdi::FamilySpec::parse(value);
                have_family = true;
            } else if (key == "p") {
                entry.p = std::stoll(value);
            } else if (key == "a") {
                entry.a = std::stoi(value);
            } else if (key == "b") {
                entry.b = std::stoi(value);
            } else if (key == "eta") {
                entry.eta = parse_int_list(value, "manifest eta");
            } else if (key == "budget") {
                entry.budget = std::stoull(value);
            } else {
                throw tdi::ParseError("manifest: unknown key '" + key + "'", lineno);
            }
        }
        if (!have_family) throw tdi::ParseError("manifest: line without family", lineno);
        entries.push_back(std::move(entry));
    }
    return entries;
}

int cmd_congruence_sweep(const GlobalOptions& g, const std::string& manifest_path) {
    std::vector<ManifestEntry> entries = parse_manifest(manifest_path);
    std::string config = "congruence-sweep manifest=" + manifest_path;
    std::ostringstream os;
    os << csv_header(config);
    os << "family,p,a,b,sigma,m,count,bound,ok\n";

    bool violated = false;
    for (const ManifestEntry& entry : entries) {
        tdi::TdiSystem sys = tdi::generate_family(entry.family);
        tdi::SigmaWitness witness = tdi::find_sigma(sys);
        const std::size_t r = sys.rank();
        // With a = 0 the class condition is vacuous; xi = 1 is the canonical
        // representative of 1..p^0.
        std::vector<std::int64_t> xi(sys.dimension, 1);
        std::vector<std::int64_t> eta = entry.eta;
        if (eta.empty()) eta.assign(sys.dimension, 0);
        tdi::BigInt bound = tdi::congruence_count_bound(sys, entry.p, entry.a, entry.b);

        std::string family_field = entry.family.name() + " " + entry.family.params();
        std::vector<tdi::CongruenceHistogram> hists = tdi::count_congruence_histogram_all_signs(
            sys, witness.sigma, entry.p, entry.a, entry.b, xi, eta, entry.budget, g.threads);
        for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
            std::string sigma_str;
            for (std::size_t i = 0; i < r; ++i) sigma_str += (mask >> i) & 1 ? '-' : '+';
            const tdi::CongruenceHistogram& hist = hists[mask];
            // Histogram keys walk m in mixed-radix order, first component most
            // significant.
            std::vector<std::int64_t> m(r, 1);
            for (std::size_t key = 0; key < hist.counts.size(); ++key) {
                std::size_t rest = key;
                for (std::size_t j = r; j-- > 0;) {
                    m[j] = static_cast<std::int64_t>(
                               rest % static_cast<std::size_t>(hist.moduli[j])) +
                           1;
                    rest /= static_cast<std::size_t>(hist.moduli[j]);
                }
                std::uint64_t count = hist.counts[key];
                bool ok = tdi::bigint_from_u64(count) <= bound;
                if (!ok) violated = true;
                std::string m_str;
                for (std::size_t j = 0; j < r; ++j)
                    m_str += (j ? ":" : "") + std::to_string(m[j]);
                os << family_field << "," << entry.p << "," << entry.a << "," << entry.b << ","
                   << sigma_str << "," << m_str << "," << count << "," << bound.get_str() << ","
                   << (ok ? 1 : 0) << "\n";
            }
        }
    }
    emit_output(g, os.str());
    if (violated) {
        std::cerr << "congruence count exceeded its bound\n";
        return kExitInternal;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// weyl scan / approx

int cmd_weyl_scan(const GlobalOptions& g, const SystemArgs& sys_args, std::int64_t X,
                  std::int64_t grid, double theta, std::int64_t count) {
    if (!g.seed_given) throw tdi::InputError("weyl scan requires --seed");
    std::string family_label, params_label;
    tdi::TdiSystem sys = sys_args.resolve(family_label, params_label);
    const std::size_t r = sys.rank();

    std::mt19937_64 rng(g.seed);
    auto uniform01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::string config = "weyl-scan " + sys_args.canonical() + " X=" + std::to_string(X) +
                         " grid=" + std::to_string(grid) + " theta=" + std::to_string(theta) +
                         " count=" + std::to_string(count) + " seed=" + std::to_string(g.seed);
    std::ostringstream os;
    os << csv_header(config);
    for (std::size_t j = 1; j <= r; ++j) os << "alpha" << j << ",";
    os << "abs_f,arc,q";
    for (std::size_t j = 1; j <= r; ++j) os << ",a" << j;
    os << "\n";
    os.precision(17);

    for (std::int64_t n = 0; n < count; ++n) {
        std::vector<double> alpha(r);
        for (double& a : alpha) a = uniform01();
        std::complex<double> f = tdi::eval_f(sys, alpha, X, 1'000'000'000, g.threads);
        tdi::ArcLabel arc = tdi::classify_arc(sys, alpha, X, theta);
        for (double a : alpha) os << a << ",";
        os << std::abs(f) << "," << (arc.major ? "major" : "minor") << ","
           << (arc.major ? arc.witness.q : 0);
        for (std::size_t j = 0; j < r; ++j)
            os << "," << (arc.major ? arc.witness.a[j] : 0);
        os << "\n";
    }
    emit_output(g, os.str());
    return 0;
}

int cmd_weyl_approx(const GlobalOptions& g, const SystemArgs& sys_args, const std::string& alpha_s,
                    std::int64_t X, std::int64_t budget) {
    std::string family_label, params_label;
    tdi::TdiSystem sys = sys_args.resolve(family_label, params_label);
    std::vector<double> alpha = parse_double_list(alpha_s, "--alpha");
    if (alpha.size() != sys.rank()) throw tdi::InputError("--alpha length must equal the rank");

    auto cert = tdi::rational_approx_search(sys, alpha, X, budget);
    std::string config = "weyl-approx " + sys_args.canonical() + " alpha=" + alpha_s +
                         " X=" + std::to_string(X) + " Y=" + std::to_string(budget);
    json j;
    fill_json_meta(j, config);
    j["found"] = cert.has_value();
    if (cert) {
        j["q"] = cert->q;
        j["a"] = cert->a;
        j["errors"] = cert->errors;
    }
    emit_output(g, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// iterate / classify

int cmd_iterate(const GlobalOptions& g, std::int64_t r, std::int64_t k, std::int64_t N,
                const std::string& policy) {
    tdi::IterationParams params;
    params.r = r;
    params.k = k;
    params.N = N;
    if (policy == "zero") {
        params.policy = tdi::HPolicy::Zero;
    } else if (policy == "max") {
        params.policy = tdi::HPolicy::Max;
    } else if (policy.rfind("list:", 0) == 0) {
        params.policy = tdi::HPolicy::Custom;
        for (std::int64_t h : parse_int_list(policy.substr(5), "--policy list"))
            params.custom_h.emplace_back(h);
    } else {
        throw tdi::InputError("policy must be zero, max, or list:h0,h1,...");
    }

    tdi::IterationTrace trace = tdi::run_iteration(params);
    std::string config = "iterate r=" + std::to_string(r) + " k=" + std::to_string(k) +
                         " N=" + std::to_string(N) + " policy=" + policy;
    std::ostringstream os;
    os << csv_header(config);
    os << "# theta = N^{-1/2} (r/s)^{N+2}, N=" << trace.theta.N.get_str() << " base="
       << tdi::format_rational(trace.theta.base) << " exp=" << trace.theta.expo;
    os.precision(17);
    os << " float=" << trace.theta.value() << "\n";
    os << "n,a,b,h,psi,c,gamma\n";
    for (std::size_t n = 0; n < trace.steps.size(); ++n) {
        const tdi::IterationStep& st = trace.steps[n];
        os << n << "," << st.a.get_str() << "," << st.b.get_str() << ",";
        if (n + 1 < trace.steps.size()) os << st.h.get_str();
        os << "," << tdi::format_rational(st.psi) << "," << tdi::format_rational(st.c) << ","
           << tdi::format_rational(st.gamma) << "\n";
    }
    emit_output(g, os.str());
    return 0;
}

int cmd_classify(const GlobalOptions& g, const SystemArgs& sys_args, const std::string& c_list,
                 const std::string& points_str) {
    std::string family_label, params_label;
    tdi::TdiSystem sys = sys_args.resolve(family_label, params_label);
    std::vector<std::int64_t> c = parse_int_list(c_list, "--c");
    std::vector<std::vector<std::int64_t>> points;
    std::stringstream ss(points_str);
    std::string block;
    while (std::getline(ss, block, ';'))
        if (!block.empty()) points.push_back(parse_int_list(block, "--points"));

    tdi::SolutionClass cls = tdi::classify_solution(points, sys, c);
    std::string config = "classify " + sys_args.canonical() + " c=" + c_list +
                         " points=" + points_str;
    json j;
    fill_json_meta(j, config);
    j["diagonal"] = cls.diagonal;
    j["projected"] = cls.projected;
    j["subset_sum"] = cls.subset_sum;
    j["generic"] = cls.generic;
    if (cls.subset_sum) j["partition"] = cls.partition;
    emit_output(g, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact counting and verification toolkit for translation-dilation invariant systems"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    GlobalOptions g;
    app.add_option("--threads", g.threads, "thread count (0 = machine parallelism)");
    app.add_option("--out", g.out_path, "output file (relative paths resolve under TDI_OUT_DIR)");
    auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed (required for randomized runs)");
    app.add_flag("--no-elapsed", g.no_elapsed, "write 0 in elapsed_ms columns");

    auto* build = app.add_subcommand("build", "generate a system and cross-check its stats");
    SystemArgs build_sys;
    build_sys.add_to(build);
    std::string build_out;
    build->add_option("--out-file", build_out, "write the generated system file here");

    auto* stats = app.add_subcommand("stats", "closed-form rank and weight");
    SystemArgs stats_sys;
    stats_sys.add_to(stats);

    auto* count = app.add_subcommand("count", "exact J counts over an X schedule");
    SystemArgs count_sys;
    count_sys.add_to(count);
    std::string count_s = "1", count_x = "4", count_strategy = "auto", count_dump;
    count->add_option("--s", count_s, "comma list of block counts");
    count->add_option("--X", count_x, "comma list of box sizes, strictly increasing");
    count->add_option("--strategy", count_strategy, "auto|doubling|sequential");
    count->add_option("--dump-table", count_dump,
                      "write the value distribution as sorted v1,...,vr,count lines");

    auto* fit = app.add_subcommand("fit", "fit the growth exponent of J against X");
    SystemArgs fit_sys;
    fit_sys.add_to(fit);
    std::int64_t fit_s = 1;
    std::string fit_x = "4,8,16";
    std::string fit_strategy = "auto";
    fit->add_option("--s", fit_s, "block count");
    fit->add_option("--X", fit_x, "comma list of box sizes (at least 3)");
    fit->add_option("--strategy", fit_strategy, "auto|doubling|sequential");

    auto* lower = app.add_subcommand("lower-bounds", "lower-bound terms and verification");
    SystemArgs lower_sys;
    lower_sys.add_to(lower);
    std::int64_t lower_s = 1, lower_x = 4;
    lower->add_option("--s", lower_s, "block count");
    lower->add_option("--X", lower_x, "box size");

    auto* congruence = app.add_subcommand("congruence", "congruence counting");
    auto* sweep = congruence->add_subcommand("sweep", "run a manifest of instances");
    std::string manifest_path;
    sweep->add_option("--manifest", manifest_path, "manifest file")->required();

    auto* weyl = app.add_subcommand("weyl", "exponential sums");
    auto* scan = weyl->add_subcommand("scan", "random frequencies: |f| and arc labels");
    SystemArgs scan_sys;
    scan_sys.add_to(scan);
    std::int64_t scan_x = 64, scan_grid = 64, scan_count = 16;
    double scan_theta = 0.25;
    scan->add_option("--X", scan_x, "box size");
    scan->add_option("--grid", scan_grid, "quadrature grid for downstream use (recorded in config)");
    scan->add_option("--theta", scan_theta, "arc dissection parameter");
    scan->add_option("--count", scan_count, "number of sample frequencies");
    auto* approx = weyl->add_subcommand("approx", "simultaneous rational approximation");
    SystemArgs approx_sys;
    approx_sys.add_to(approx);
    std::string approx_alpha;
    std::int64_t approx_x = 100, approx_budget = 100;
    approx->add_option("--alpha", approx_alpha, "comma list of frequencies")->required();
    approx->add_option("--X", approx_x, "scale");
    approx->add_option("--budget", approx_budget, "denominator budget Y");

    auto* iterate = app.add_subcommand("iterate", "exact parameter-iteration trace");
    std::int64_t it_r = 2, it_k = 2, it_n = 5;
    std::string it_policy = "zero";
    iterate->add_option("--r", it_r, "rank");
    iterate->add_option("--k", it_k, "degree");
    iterate->add_option("--N", it_n, "number of steps");
    iterate->add_option("--policy", it_policy, "zero|max|list:h0,h1,...");

    auto* classify = app.add_subcommand("classify", "classify a solution tuple");
    SystemArgs classify_sys;
    classify_sys.add_to(classify);
    std::string classify_c, classify_points;
    classify->add_option("--c", classify_c, "comma list of block coefficients")->required();
    classify
        ->add_option("--points", classify_points,
                     "semicolon-separated points, comma coordinates")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    g.seed_given = seed_opt->count() > 0;
    if (g.threads > 0) omp_set_num_threads(g.threads);

    try {
        if (build->parsed()) return cmd_build(g, build_sys, build_out);
        if (stats->parsed()) return cmd_stats(stats_sys);
        if (count->parsed())
            return cmd_count(g, count_sys, count_s, count_x, count_strategy, count_dump);
        if (fit->parsed()) return cmd_fit(g, fit_sys, fit_s, fit_x, fit_strategy);
        if (lower->parsed()) return cmd_lower_bounds(g, lower_sys, lower_s, lower_x);
        if (congruence->parsed()) {
            if (!sweep->parsed()) throw tdi::InputError("congruence requires the sweep subcommand");
            return cmd_congruence_sweep(g, manifest_path);
        }
        if (weyl->parsed()) {
            if (scan->parsed())
                return cmd_weyl_scan(g, scan_sys, scan_x, scan_grid, scan_theta, scan_count);
            if (approx->parsed())
                return cmd_weyl_approx(g, approx_sys, approx_alpha, approx_x, approx_budget);
            throw tdi::InputError("weyl requires scan or approx");
        }
        if (iterate->parsed()) return cmd_iterate(g, it_r, it_k, it_n, it_policy);
        if (classify->parsed()) return cmd_classify(g, classify_sys, classify_c, classify_points);
    } catch (const tdi::BudgetError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitBudget;
    } catch (const tdi::ParseError& e) {
        std::cerr << "parse error";
        if (e.line) std::cerr << " at line " << e.line << ":" << e.column;
        std::cerr << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
