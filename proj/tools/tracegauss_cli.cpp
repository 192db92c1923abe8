// Command-line front end: every computation as a subcommand emitting CSV or
// JSON tables with a self-describing preamble.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "tracegauss/bounds.hpp"
#include "tracegauss/distances.hpp"
#include "tracegauss/haar_mc.hpp"
#include "tracegauss/orthosymp.hpp"
#include "tracegauss/serialize.hpp"
#include "tracegauss/unitary.hpp"

using json = nlohmann::json;
using namespace tracegauss;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
    int precision_bits = 0; // 0: per-command policy
    std::string out;
    std::string format = "json";
    uint64_t seed = 1;
    int threads = 0;
};

std::string now_string() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

int default_bits(const Options& o, int n) {
    if (o.precision_bits > 0) return o.precision_bits;
    if (const char* env = std::getenv("TRACE_GAUSS_PRECISION")) {
        int b = std::atoi(env);
        if (b >= PrecisionContext::kMinBits) return b;
    }
    return PrecisionContext::for_problem_size(n).bits();
}

haar_mc::EnsembleKind parse_kind(const std::string& g) {
    if (g == "unitary") return haar_mc::EnsembleKind::Unitary;
    if (g == "o+even") return haar_mc::EnsembleKind::OPlusEven;
    if (g == "o-even") return haar_mc::EnsembleKind::OMinusEven;
    if (g == "o+odd") return haar_mc::EnsembleKind::OPlusOdd;
    if (g == "o-odd") return haar_mc::EnsembleKind::OMinusOdd;
    if (g == "sp") return haar_mc::EnsembleKind::Sp;
    throw CLI::ValidationError("group", "expected unitary|o+even|o-even|o+odd|o-odd|sp");
}

// writes {"meta": ..., "records": [...]} as json or csv
void emit(const Options& o, const std::string& command, const json& config, const json& records) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) throw std::runtime_error("cannot open output file " + o.out);
        os = &file;
    }
    if (o.format == "json") {
        json doc;
        doc["meta"] = {{"tool", "tracegauss"},
                       {"version", kVersion},
                       {"command", command},
                       {"config", config},
                       {"timestamp", now_string()}};
        doc["records"] = records;
        *os << doc.dump(2) << "\n";
        return;
    }
    // csv: preamble comments, then a header from the union of record keys
    *os << "# tool=tracegauss version=" << kVersion << " command=" << command << "\n";
    *os << "# config=" << config.dump() << "\n";
    *os << "# timestamp=" << now_string() << "\n";
    std::vector<std::string> keys;
    for (const auto& rec : records)
        for (auto it = rec.begin(); it != rec.end(); ++it)
            if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) keys.push_back(it.key());
    *os << serialize::csv_row(keys);
    for (const auto& rec : records) {
        std::vector<std::string> row;
        for (const auto& k : keys) {
            if (!rec.contains(k)) {
                row.push_back("");
            } else if (rec[k].is_string()) {
                row.push_back(rec[k].get<std::string>());
            } else {
                row.push_back(rec[k].dump());
            }
        }
        *os << serialize::csv_row(row);
    }
}

const char* method_name(unitary::Method m) {
    switch (m) {
        case unitary::Method::toeplitz: return "toeplitz";
        case unitary::Method::fredholm: return "fredholm";
        case unitary::Method::product: return "product";
        case unitary::Method::monte_carlo: return "monte-carlo";
    }
    return "?";
}

json charfn_record(const Real& r, const unitary::CharFnValue& v) {
    return {{"r", serialize::to_decimal(r, 20)},
            {"method", method_name(v.method)},
            {"value_re", serialize::to_decimal(v.value.re)},
            {"value_im", serialize::to_decimal(v.value.im)},
            {"err_est", serialize::to_decimal(v.err_est, 10)}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trace statistics of the classical compact groups: characteristic functions, "
                 "distances to the Gaussian, bound verification, Monte Carlo"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--precision-bits", opt.precision_bits, "working precision in bits");
    app.add_option("--out", opt.out, "output path (default stdout)");
    app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", opt.seed, "RNG seed");
    app.add_option("--threads", opt.threads, "worker count hint (0: all)");

    std::string g_group = "unitary";
    int g_n = 4, g_m = 1, g_points = 20;
    double g_rmin = 0.1, g_rmax = 5.0;
    std::string g_method = "both";
    auto* c_charfn = app.add_subcommand("charfn", "characteristic function on a radial grid");
    c_charfn->add_option("--group", g_group);
    c_charfn->add_option("--n", g_n)->required();
    c_charfn->add_option("--m", g_m, "power (product factorization when m > 1)");
    c_charfn->add_option("--r-min", g_rmin);
    c_charfn->add_option("--r-max", g_rmax);
    c_charfn->add_option("--points", g_points);
    c_charfn->add_option("--method", g_method)->check(CLI::IsMember({"both", "toeplitz", "fredholm"}));

    std::string d_norms = "l2";
    auto* c_dist = app.add_subcommand("distance", "density distances to the limiting Gaussian");
    c_dist->add_option("--group", g_group);
    c_dist->add_option("--n", g_n)->required();
    c_dist->add_option("--m", g_m);
    c_dist->add_option("--norms", d_norms, "comma list from l2,l1,linf");

    std::string b_name = "all";
    auto* c_bound = app.add_subcommand("verify-bound", "evaluate bound formulas against exact values");
    c_bound->add_option("--name", b_name, "tb1|hadamard|constants|all");
    c_bound->add_option("--n", g_n);
    c_bound->add_option("--r-min", g_rmin);
    c_bound->add_option("--r-max", g_rmax);
    c_bound->add_option("--points", g_points);

    std::string a_which = "quartic";
    std::string a_orders = "50,100";
    auto* c_asy = app.add_subcommand("asymptotics", "normalized asymptotic-constant ratios");
    c_asy->add_option("--which", a_which)
        ->check(CLI::IsMember({"quartic", "quadratic", "l2-unitary", "l2-ortho"}));
    c_asy->add_option("--orders", a_orders, "comma list of orders");

    uint64_t s_count = 10000;
    std::string s_batch;
    auto* c_sample = app.add_subcommand("sample", "Haar trace samples and summary moments");
    c_sample->add_option("--group", g_group);
    c_sample->add_option("--n", g_n)->required();
    c_sample->add_option("--m", g_m);
    c_sample->add_option("--count", s_count);
    c_sample->add_option("--batch-out", s_batch, "write the raw batch file here");

    auto* c_rains = app.add_subcommand("rains-check", "two-ensemble power factorization z-scores");
    c_rains->add_option("--group", g_group);
    c_rains->add_option("--n", g_n)->required();
    c_rains->add_option("--m", g_m)->required();
    c_rains->add_option("--count", s_count);

    CLI11_PARSE(app, argc, argv);
    bool all_hold = true;

    try {
        if (*c_charfn) {
            int bits = default_bits(opt, g_n);
            PrecisionContext pc(bits);
            auto kind = parse_kind(g_group);
            json records = json::array();
            json config = {{"group", g_group}, {"n", g_n},      {"m", g_m},
                           {"r_min", g_rmin},  {"r_max", g_rmax}, {"points", g_points},
                           {"bits", bits},     {"seed", opt.seed}};
            for (int i = 0; i < g_points; ++i) {
                double rd = g_rmin + (g_rmax - g_rmin) * i / std::max(1, g_points - 1);
                Real r(rd, static_cast<mpfr_prec_t>(bits));
                if (kind == haar_mc::EnsembleKind::Unitary) {
                    if (g_m > 1) {
                        auto v = unitary::charfn_power(unitary::UnitaryProblem(g_n, g_m), Complex(r), pc);
                        records.push_back(charfn_record(r, v));
                    } else {
                        if (g_method != "fredholm" && g_n <= 64)
                            records.push_back(charfn_record(r, unitary::charfn_toeplitz(g_n, Complex(r), pc)));
                        if (g_method != "toeplitz")
                            records.push_back(charfn_record(r, unitary::charfn_fredholm(g_n, r, pc)));
                    }
                } else {
                    SymmetryClass cls = haar_mc::to_symmetry_class(kind, g_n);
                    if (g_m > 1) {
                        records.push_back(charfn_record(r, orthosymp::charfn_power_ortho(cls, g_m, r, pc)));
                    } else {
                        if (g_method != "fredholm" && g_n <= 48)
                            records.push_back(
                                charfn_record(r, orthosymp::charfn_th_determinant(cls, Complex(r), pc)));
                        if (g_method != "toeplitz")
                            records.push_back(charfn_record(r, orthosymp::charfn_be_fredholm(cls, r, pc)));
                    }
                }
            }
            emit(opt, "charfn", config, records);
        } else if (*c_dist) {
            int bits = default_bits(opt, g_n);
            PrecisionContext pc(bits);
            auto kind = parse_kind(g_group);
            json records = json::array();
            json config = {{"group", g_group}, {"n", g_n}, {"norms", d_norms}, {"bits", bits}};
            auto push_result = [&](const char* norm, const distances::DistanceResult& d) {
                json comps;
                for (auto& [k, v] : d.components) comps[k] = serialize::to_decimal(v, 25);
                records.push_back({{"name", std::string("distance-") + norm},
                                   {"n", g_n},
                                   {"m", g_m},
                                   {"class", g_group},
                                   {"norm", norm},
                                   {"value", serialize::to_decimal(d.value)},
                                   {"err_est", serialize::to_decimal(d.err_est, 10)},
                                   {"components", comps}});
            };
            bool want_l2 = d_norms.find("l2") != std::string::npos;
            bool want_l1 = d_norms.find("l1") != std::string::npos;
            bool want_linf = d_norms.find("linf") != std::string::npos;
            if (kind == haar_mc::EnsembleKind::Unitary) {
                if (want_l2) push_result("l2", distances::l2_distance_unitary(g_n, pc, opt.threads));
                if (want_l1 || want_linf) {
                    auto [l1, linf] = distances::l1_linf_distance_unitary(g_n, pc, opt.threads);
                    if (want_l1) push_result("l1", l1);
                    if (want_linf) push_result("linf", linf);
                }
            } else {
                SymmetryClass cls = haar_mc::to_symmetry_class(kind, g_n);
                if (want_l2) push_result("l2", distances::l2_distance_ortho(cls, pc, opt.threads));
                if (want_l1 || want_linf) {
                    auto [l1, linf] = distances::l1_linf_distance_ortho(cls, pc, opt.threads);
                    if (want_l1) push_result("l1", l1);
                    if (want_linf) push_result("linf", linf);
                }
            }
            emit(opt, "distance", config, records);
        } else if (*c_bound) {
            int bits = opt.precision_bits > 0 ? opt.precision_bits : 320;
            PrecisionContext pc(bits);
            json records = json::array();
            json config = {{"name", b_name}, {"n", g_n},           {"r_min", g_rmin},
                           {"r_max", g_rmax}, {"points", g_points}, {"bits", bits}};
            auto domination = [&](const std::string& which) {
                for (int i = 0; i < g_points; ++i) {
                    double rd = g_rmin * std::pow(g_rmax / g_rmin,
                                                  static_cast<double>(i) / std::max(1, g_points - 1));
                    Real r(rd, static_cast<mpfr_prec_t>(bits));
                    auto f = g_n <= 64 ? unitary::charfn_toeplitz(g_n, Complex(r), pc)
                                       : unitary::charfn_fredholm(g_n, r, pc);
                    Real fab = abs(f.value);
                    Real bound(0L, static_cast<mpfr_prec_t>(bits));
                    if (which == "tb1") {
                        bound = bounds::tail_bound_tb1(g_n, r, pc);
                    } else {
                        if (!(4 * r >= Real(7L * g_n, static_cast<mpfr_prec_t>(bits)))) continue;
                        bound = bounds::tail_bound_hadamard(g_n, r, pc);
                    }
                    bool holds = fab <= bound + f.err_est;
                    all_hold = all_hold && holds;
                    records.push_back({{"name", which},
                                       {"n", g_n},
                                       {"r", serialize::to_decimal(r, 16)},
                                       {"value", serialize::to_decimal(bound, 25)},
                                       {"bounds_quantity", "|charfn|"},
                                       {"exact", serialize::to_decimal(fab, 25)},
                                       {"holds", holds}});
                }
            };
            if (b_name == "tb1" || b_name == "all") domination("tb1");
            if (b_name == "hadamard" || b_name == "all") domination("hadamard");
            if (b_name == "constants" || b_name == "all") {
                for (const auto& e : bounds::constants_registry(pc))
                    records.push_back({{"name", e.name},
                                       {"value", serialize::to_decimal(e.value, 30)},
                                       {"note", e.note}});
            }
            emit(opt, "verify-bound", config, records);
        } else if (*c_asy) {
            int bits = opt.precision_bits > 0 ? opt.precision_bits : 256;
            PrecisionContext pc(bits);
            json records = json::array();
            json config = {{"which", a_which}, {"orders", a_orders}, {"bits", bits}};
            std::vector<long> orders;
            for (size_t p = 0; p < a_orders.size();) {
                size_t q = a_orders.find(',', p);
                if (q == std::string::npos) q = a_orders.size();
                orders.push_back(std::stol(a_orders.substr(p, q - p)));
                p = q + 1;
            }
            for (long nu : orders) {
                Real ratio(static_cast<mpfr_prec_t>(bits));
                if (a_which == "quartic") {
                    ratio = distances::quartic_bessel_ratio(nu, pc);
                } else if (a_which == "quadratic") {
                    ratio = distances::quadratic_bessel_ratio(nu, pc);
                } else if (a_which == "l2-unitary") {
                    auto d = distances::l2_distance_unitary(static_cast<int>(nu), pc, opt.threads);
                    mpfr_prec_t wp = d.value.prec();
                    Real gn(wp);
                    mpfr_gamma(gn.get(), Real(nu + 2, wp).get(), MPFR_RNDN);
                    Real limit = 2 * exp(Real(4L, wp)) * sqrt(Real::pi(wp));
                    ratio = *d.component("f-domain") * gn * gn * sqrt(Real(nu, wp)) / limit;
                } else {
                    SymmetryClass cls = SymmetryClass::o_plus_even(static_cast<int>(nu));
                    auto d = distances::l2_distance_ortho(cls, pc, opt.threads);
                    mpfr_prec_t wp = d.value.prec();
                    long deff = cls.d_eff();
                    Real gn(wp);
                    mpfr_gamma(gn.get(), Real(deff + 1, wp).get(), MPFR_RNDN);
                    ratio = *d.component("f-domain") * gn * sqrt(Real(deff, wp)) / exp(Real(2L, wp));
                }
                records.push_back({{"order", nu}, {"ratio", serialize::to_decimal(ratio, 20)}});
            }
            emit(opt, "asymptotics", config, records);
        } else if (*c_sample) {
            auto kind = parse_kind(g_group);
            auto batch = haar_mc::sample_traces(kind, g_n, g_m, s_count, opt.seed, opt.threads);
            if (!s_batch.empty()) haar_mc::write_batch(s_batch, batch);
            auto moments = haar_mc::empirical_moments(batch, 4);
            json records = json::array();
            for (const auto& e : moments)
                records.push_back(
                    {{"a", e.a}, {"b", e.b}, {"re", e.value.real()}, {"im", e.value.imag()}, {"se", e.se}});
            json config = {{"group", g_group}, {"n", g_n}, {"m", g_m},
                           {"count", s_count}, {"seed", opt.seed}};
            emit(opt, "sample", config, records);
        } else if (*c_rains) {
            auto kind = parse_kind(g_group);
            auto rep = haar_mc::rains_distribution_check(kind, g_n, g_m, s_count, opt.seed, opt.threads);
            json records = json::array();
            for (auto& [name, z] : rep.z_scores) records.push_back({{"statistic", name}, {"z", z}});
            records.push_back({{"statistic", "max|z|"}, {"z", rep.max_abs_z}});
            all_hold = rep.max_abs_z < 4.0;
            json config = {{"group", g_group}, {"n", g_n}, {"m", g_m},
                           {"count", s_count}, {"seed", opt.seed}};
            emit(opt, "rains-check", config, records);
        }
    } catch (const domain_error& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return all_hold ? 0 : 1;
}
