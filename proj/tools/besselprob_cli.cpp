/*
 *   Copyright 2026 The besselprob Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// besselprob command line front end.
//
// Exit codes: 0 pass / exists, 1 tolerance failure, 2 domain or usage error,
// 3 not exists, 4 indeterminate.

#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include <CLI11.hpp>
#include <besselprob/besselprob.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
namespace bp = besselprob;
namespace gt = besselprob::gammatype;

enum Exit { kPass = 0, kTolerance = 1, kUsage = 2, kNotExists = 3, kIndeterminate = 4 };

struct Global {
    std::optional<double> tol;
    int highprec_digits = 50;
    unsigned threads = 1;
    std::uint64_t seed = 42;
    std::string out;
    std::string manifest;

    bp::PrecisionPolicy policy() const {
        bp::PrecisionPolicy p;
        p.highprec_digits = highprec_digits;
        p.validate();
        return p;
    }
    double tol_or(double fallback) const { return tol.value_or(fallback); }
};

struct Outcome {
    std::string payload;
    int code = kPass;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// NaN and infinities have no JSON spelling.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    EVP_DigestUpdate(ctx, data.data(), data.size());
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < len; ++i) {
        s.push_back(hex[md[i] >> 4]);
        s.push_back(hex[md[i] & 15]);
    }
    return s;
}

std::string csv_number(double x) {
    if (!std::isfinite(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Spec input

std::vector<double> parse_entries(const json& arr, const char* key) {
    if (!arr.is_array()) throw bp::DomainError(std::string("spec: '") + key + "' must be an array");
    std::vector<double> v;
    for (const auto& e : arr) {
        if (e.is_number()) {
            v.push_back(e.get<double>());
        } else if (e.is_string()) {
            v.push_back(bp::parse_rational(e.get<std::string>()));
        } else {
            throw bp::DomainError(std::string("spec: entries of '") + key + "' must be numbers or strings");
        }
    }
    return v;
}

bp::GammaRatioSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw bp::DomainError(std::string("spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw bp::DomainError("spec: expected an object");
    for (const auto& [k, v] : j.items()) {
        if (k != "a" && k != "b" && k != "c" && k != "d") throw bp::DomainError("spec: unknown key '" + k + "'");
    }
    auto get = [&](const char* k) { return j.contains(k) ? parse_entries(j[k], k) : std::vector<double>{}; };
    return bp::GammaRatioSpec(get("a"), get("b"), get("c"), get("d"));
}

// --spec accepts inline JSON or @file.
std::string read_spec_arg(const std::string& arg) {
    if (arg.empty() || arg.front() != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw bp::DomainError("cannot read spec file '" + arg.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json spec_json(const bp::GammaRatioSpec& s) {
    return json{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}};
}

double rational_flag(const std::string& s, const char* name) {
    if (s.empty()) throw bp::DomainError(std::string("missing --") + name);
    return bp::parse_rational(s);
}

std::vector<double> range(double from, double to, double step) {
    if (!(step > 0.0) || !(to >= from)) throw bp::DomainError("range: need step > 0 and to >= from");
    std::vector<double> v;
    const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
    for (long i = 0; i <= n; ++i) v.push_back(from + static_cast<double>(i) * step);
    return v;
}

// ---------------------------------------------------------------------------
// verify

Outcome verify_lommel(const Global& g, const std::vector<double>& alphas, const std::vector<double>& ts) {
    const double tol = g.tol_or(1e-9);
    const auto pol = g.policy();
    for (double a : alphas) bp::vandantzig::PowerSemicircle{a};
    struct Row {
        double alpha, t, lhs, sin_part, rhs, err;
    };
    std::vector<Row> rows(alphas.size() * ts.size());
    bp::parallel_for(rows.size(), g.threads, [&](std::size_t k) {
        const double a = alphas[k / ts.size()], t = ts[k % ts.size()];
        const auto v = bp::vandantzig::lommel_integral(a, t);
        const double rhs = bp::specfun::bessel_j(bp::specfun::BesselOrder{a}, t, pol);
        rows[k] = {a, t, v.cos_part, v.sin_part, rhs, std::fabs(v.cos_part - rhs)};
    });
    json table = json::array();
    bool ok = true;
    for (const auto& r : rows) {
        const bool pass = r.err <= tol;
        ok = ok && pass;
        table.push_back({{"alpha", r.alpha}, {"t", r.t}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"abs_err", r.err},
                         {"sin_part", r.sin_part}, {"pass", pass}});
    }
    return {dump({{"check", "lommel"}, {"tol", tol}, {"pass", ok}, {"rows", table}}), ok ? kPass : kTolerance};
}

Outcome verify_ws(const Global& g, const std::vector<double>& alphas, const std::vector<double>& fractions) {
    const double tol = g.tol_or(1e-6);
    const auto pol = g.policy();
    for (double f : fractions) {
        if (!(f > 0.0 && f < 1.0)) throw bp::DomainError("verify ws: s-fractions must lie in (0, 1)");
    }
    for (double a : alphas) {
        if (!(a > -0.5)) throw bp::DomainError("verify ws: alpha must exceed -1/2");
    }
    struct Row {
        double alpha, s, value, est, closed, rel;
    };
    std::vector<Row> rows(alphas.size() * fractions.size());
    bp::parallel_for(rows.size(), g.threads, [&](std::size_t k) {
        const double a = alphas[k / fractions.size()];
        const double s = fractions[k % fractions.size()] * (a + 0.5);
        const auto q = bp::quad::ws_integral(a, s, 0.01 * tol, pol);
        const double closed = bp::quad::ws_rhs(a, s);
        rows[k] = {a, s, q.value, q.abs_error_estimate, closed, std::fabs(q.value - closed) / std::fabs(closed)};
    });
    json table = json::array();
    bool ok = true;
    for (const auto& r : rows) {
        const bool pass = r.rel <= tol;
        ok = ok && pass;
        table.push_back({{"alpha", r.alpha}, {"s", r.s}, {"integral", r.value}, {"abs_error_estimate", r.est},
                         {"closed_form", r.closed}, {"rel_err", r.rel}, {"pass", pass}});
    }
    return {dump({{"check", "ws"}, {"tol", tol}, {"pass", ok}, {"rows", table}}), ok ? kPass : kTolerance};
}

Outcome verify_appendix(const Global& g, const std::string& which) {
    if (which != "fresnel" && which != "selberg" && which != "all") {
        throw bp::DomainError("verify appendix: --which must be fresnel, selberg or all");
    }
    json out;
    bool ok = true;
    if (which != "selberg") {
        const double tol = g.tol_or(1e-8);
        std::vector<double> mus;
        for (int k = 1; k <= 9; ++k) mus.push_back(0.1 * k);
        std::vector<json> rows(mus.size());
        bp::parallel_for(mus.size(), g.threads, [&](std::size_t i) {
            const double mu = mus[i];
            const auto q = bp::quad::fresnel_cos_moment(mu);
            const double closed = bp::specfun::gamma(mu) * std::cos(0.5 * std::numbers::pi * mu);
            const double err = std::fabs(q.value - closed);
            rows[i] = {{"mu", mu}, {"integral", q.value}, {"closed_form", closed}, {"abs_err", err},
                       {"pass", err <= tol}};
        });
        for (const auto& r : rows) ok = ok && r["pass"].get<bool>();
        out["fresnel"] = {{"tol", tol}, {"rows", rows}};
    }
    if (which != "fresnel") {
        const double tol = g.tol_or(1e-6);
        const std::vector<std::pair<double, double>> pts{{0.5, 0.75}, {1.0, 1.2}, {2.0, 2.2}};
        std::vector<json> rows(pts.size());
        bp::parallel_for(pts.size(), g.threads, [&](std::size_t i) {
            const auto c = gt::selberg2_check(pts[i].first, pts[i].second);
            rows[i] = {{"alpha", pts[i].first},
                       {"s", pts[i].second},
                       {"quadrature", c.quadrature},
                       {"quadrature_swapped", c.quadrature_swapped},
                       {"closed_form", c.closed_form},
                       {"rel_err", c.rel_error},
                       {"pass", c.rel_error <= tol}};
        });
        for (const auto& r : rows) ok = ok && r["pass"].get<bool>();
        out["selberg"] = {{"tol", tol}, {"rows", rows}};
    }
    out["check"] = "appendix";
    out["which"] = which;
    out["pass"] = ok;
    return {dump(out), ok ? kPass : kTolerance};
}

// ---------------------------------------------------------------------------
// vandantzig

Outcome vandantzig_pair(const Global& g, double alpha, double grid_max, std::size_t mc, int points) {
    if (!(grid_max > 0.0) || points < 2) throw bp::DomainError("vandantzig pair: need grid-max > 0, points >= 2");
    const bp::vandantzig::PowerSemicircle model(alpha);
    std::vector<double> grid;
    for (int i = 0; i < points; ++i) grid.push_back(grid_max * i / (points - 1));
    const auto r = bp::vandantzig::verify_pair(model, grid, mc, g.seed, g.threads, 200, g.policy());
    const double id_tol = g.tol_or(1e-8);
    const bool pass = r.max_identity_error <= id_tol && r.bochner_min_eigenvalue >= -1e-10 &&
                      (mc < 2 || r.mc_cf_max_z_score <= 4.0);
    json j{{"alpha", r.alpha},
           {"grid_max", grid_max},
           {"grid_points", points},
           {"max_identity_error", r.max_identity_error},
           {"identity_tol", id_tol},
           {"bochner_min_eigenvalue", r.bochner_min_eigenvalue},
           {"mc_count", r.mc_count},
           {"mc_cf_max_z_score", r.mc_cf_max_z_score},
           {"seed", r.seed},
           {"pass", pass}};
    return {dump(j), pass ? kPass : kTolerance};
}

Outcome vandantzig_sample(const Global& g, double alpha, std::size_t count, const std::string& kind) {
    if (kind != "hitting" && kind != "subordinated") {
        throw bp::DomainError("vandantzig sample: --kind must be hitting or subordinated");
    }
    const auto model = bp::vandantzig::make_hitting_time_model(alpha, 200, g.policy());
    const auto xs = kind == "hitting" ? bp::vandantzig::sample_hitting_time(model, g.seed, count, g.threads)
                                      : bp::vandantzig::sample_subordinated(model, g.seed, count, g.threads);
    std::string s = "index,value\n";
    for (std::size_t i = 0; i < xs.size(); ++i) s += std::to_string(i) + "," + csv_number(xs[i]) + "\n";
    return {s, kPass};
}

// ---------------------------------------------------------------------------
// gammatype

json verdict_json(const gt::ExistenceVerdict& v) {
    json j{{"state", gt::to_string(v.state)}, {"reason", gt::to_string(v.reason)}};
    j["witness"] = v.witness ? num(*v.witness) : json(nullptr);
    if (std::isfinite(v.witness_value)) {
        j["witness_value"] = v.witness_value;
        j["witness_error"] = v.witness_error;
    }
    if (std::isfinite(v.scan_horizon)) j["scan_horizon"] = v.scan_horizon;
    if (!v.violated.empty()) j["violated"] = v.violated;
    return j;
}

int verdict_code(gt::ExistState s) {
    switch (s) {
        case gt::ExistState::Exists: return kPass;
        case gt::ExistState::NotExists: return kNotExists;
        case gt::ExistState::Indeterminate: return kIndeterminate;
    }
    return kIndeterminate;
}

gt::ExistsOptions exists_options(const Global& g) {
    gt::ExistsOptions o;
    o.scan.threads = g.threads;
    o.scan.policy = g.policy();
    return o;
}

Outcome gammatype_exists(const Global& g, const std::string& spec_arg, const std::string& a, const std::string& b,
                         const std::string& c, const std::string& d) {
    const bool scalar = !a.empty() || !b.empty() || !c.empty() || !d.empty();
    if (scalar == !spec_arg.empty()) throw bp::DomainError("gammatype exists: give either --spec or --a --b --c --d");
    bp::GammaRatioSpec spec;
    if (scalar) {
        spec = bp::GammaRatioSpec({rational_flag(a, "a")}, {rational_flag(b, "b")},
                                  {rational_flag(c, "c"), rational_flag(d, "d")}, {});
    } else {
        spec = parse_spec(read_spec_arg(spec_arg));
    }
    const auto v = gt::exists(spec, exists_options(g));
    json j{{"spec", spec_json(spec)}, {"verdict", verdict_json(v)}};
    const auto nc = gt::necessary_conditions(spec);
    j["necessary_conditions"] = {{"pass", nc.pass}, {"violated", nc.violated}};
    const bool one_sided = spec.b.empty() && spec.d.empty() && !spec.a.empty() && spec.a.size() == spec.c.size();
    if (one_sided && std::fabs(bp::sum_of(spec.a) - bp::sum_of(spec.c)) <= 1e-12 * bp::sum_of(spec.a)) {
        j["atom_at_one"] = gt::atom_at_one(spec);
    }
    return {dump(j), verdict_code(v.state)};
}

Outcome gammatype_boundary(const Global& g, double a, double b, const std::vector<double>& us, double resolution) {
    std::vector<gt::BoundarySample> rows(us.size());
    auto opt = exists_options(g);
    opt.scan.threads = 1;
    bp::parallel_for(us.size(), g.threads, [&](std::size_t i) { rows[i] = gt::boundary_f_ab(a, b, us[i], resolution, opt); });
    std::string s = "u,f_value,bracket_width,method\n";
    bool indeterminate = false;
    for (const auto& r : rows) {
        indeterminate = indeterminate || r.indeterminate;
        s += csv_number(r.u) + "," + csv_number(r.f_value) + "," + csv_number(r.bracket_width) + "," +
             gt::to_string(r.method) + "\n";
    }
    return {s, indeterminate ? kIndeterminate : kPass};
}

Outcome gammatype_density(const Global& g, const std::string& spec_arg, const std::vector<double>& xs,
                          std::optional<double> sigma, double T) {
    const auto spec = parse_spec(read_spec_arg(spec_arg));
    double line = 0.0;
    if (sigma) {
        line = *sigma;
    } else if (!spec.in_strip(0.0)) {
        throw bp::DomainError("gammatype density: 0 is outside the strip, pass --sigma");
    }
    const double tol = g.tol_or(1e-8);
    std::vector<json> rows(xs.size());
    bool ok = true;
    std::vector<int> failed(xs.size(), 0);
    bp::parallel_for(xs.size(), g.threads, [&](std::size_t i) {
        try {
            const auto r = gt::density_via_inversion(spec, xs[i], line, T, tol);
            rows[i] = {{"x", xs[i]},
                       {"density", r.value},
                       {"abs_error_estimate", r.abs_error_estimate},
                       {"atom_at_one", r.atom},
                       {"truncation", r.truncation},
                       {"accelerated", r.accelerated}};
        } catch (const bp::AccuracyError& e) {
            rows[i] = {{"x", xs[i]}, {"error", e.what()}, {"achieved", num(e.achieved())}};
            failed[i] = 1;
        }
    });
    for (int f : failed) ok = ok && !f;
    json j{{"spec", spec_json(spec)}, {"sigma", line}, {"tol", tol}, {"rows", rows}, {"pass", ok}};
    return {dump(j), ok ? kPass : kTolerance};
}

Outcome gammatype_quasilevy(const Global& g, double a, double b, const std::vector<double>& xs) {
    const gt::QuasiLevySpec q(a, b);
    const double tol = g.tol_or(1e-5);
    const double root = gt::quasi_levy_root(q);
    // sign changes on a log grid of the negative axis
    int changes = 0;
    double prev = gt::quasi_levy_density(q, -1e-6);
    for (int k = 1; k <= 2000; ++k) {
        const double v = gt::quasi_levy_density(q, -1e-6 * std::pow(10.0, 8.0 * k / 2000.0));
        if (v != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
        if (v != 0.0) prev = v;
    }
    json recon = json::array();
    bool ok = changes == 1;
    for (double s : {-0.5 * a, 0.5 * b}) {
        const double rebuilt = std::exp(gt::quasi_levy_log_mellin(q, s));
        const double m = gt::mellin(gt::extremal_spec(a, b), s);
        const double rel = std::fabs(rebuilt - m) / m;
        ok = ok && rel <= tol;
        recon.push_back({{"s", s}, {"rebuilt", rebuilt}, {"mellin", m}, {"rel_err", rel}});
    }
    json values = json::array();
    for (double x : xs) values.push_back({{"x", x}, {"density", num(gt::quasi_levy_density(q, x))}});
    json j{{"a", a},         {"b", b},          {"c", q.c},       {"d", q.d},          {"drift", q.drift},
           {"root", root},   {"sign_changes", changes}, {"reconstruction", recon}, {"values", values},
           {"tol", tol},     {"pass", ok}};
    return {dump(j), ok ? kPass : kTolerance};
}

Outcome gammatype_convexity(const Global& g, double a, double b, const std::vector<double>& us, double resolution) {
    const auto rep = gt::convexity_scan(a, b, us, resolution, exists_options(g));
    json samples = json::array();
    for (const auto& s : rep.samples) {
        samples.push_back({{"u", s.u},
                           {"f_value", s.f_value},
                           {"bracket_lo", s.bracket_lo},
                           {"bracket_hi", s.bracket_hi},
                           {"bracket_width", s.bracket_width},
                           {"method", gt::to_string(s.method)},
                           {"indeterminate", s.indeterminate}});
    }
    json j{{"a", a},
           {"b", b},
           {"samples", samples},
           {"second_differences", rep.second_differences},
           {"positive_second_differences", rep.positive},
           {"negative_second_differences", rep.negative},
           {"flat_second_differences", rep.flat},
           {"monotonicity_violations", rep.monotonicity_violations},
           {"any_indeterminate", rep.any_indeterminate}};
    int code = kPass;
    if (rep.monotonicity_violations > 0) code = kTolerance;
    else if (rep.any_indeterminate) code = kIndeterminate;
    return {dump(j), code};
}

Outcome sample_ratio_product(const Global& g, const std::string& spec_arg, std::size_t count) {
    const auto spec = parse_spec(read_spec_arg(spec_arg));
    const auto xs = gt::sample_ratio_product(spec, g.seed, count, g.threads);
    std::string s = "index,value\n";
    for (std::size_t i = 0; i < xs.size(); ++i) s += std::to_string(i) + "," + csv_number(xs[i]) + "\n";
    return {s, kPass};
}

// ---------------------------------------------------------------------------

void emit(const Global& g, const Outcome& o, const std::vector<std::string>& argv, double wall) {
    if (g.out.empty()) {
        std::cout << o.payload;
        std::cout.flush();
    } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) throw bp::DomainError("cannot write '" + g.out + "'");
        f << o.payload;
    }
    json m{{"command_line", argv},
           {"seed", g.seed},
           {"threads", g.threads},
           {"precision", {{"highprec_digits", g.highprec_digits}, {"tol", g.tol ? json(*g.tol) : json(nullptr)}}},
           {"versions",
            {{"besselprob", bp::kVersion},
             {"compiler", __VERSION__},
             {"cli11", CLI11_VERSION},
             {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                   std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                   std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
             {"mpfr", mpfr_get_version()},
             {"openssl", OPENSSL_VERSION_TEXT}}},
           {"wall_time_s", wall},
           {"exit_code", o.code},
           {"output_sha256", sha256_hex(o.payload)}};
    std::string path = g.manifest;
    if (path.empty() && !g.out.empty()) path = g.out + ".manifest.json";
    if (path.empty()) {
        std::cerr << m.dump() << "\n";
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw bp::DomainError("cannot write '" + path + "'");
        f << m.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> args(argv, argv + argc);

    CLI::App app{"besselprob: Bessel-function probability checks and Gamma-type existence tools"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--tol", g.tol, "Acceptance tolerance (command specific default)");
    app.add_option("--highprec-digits", g.highprec_digits, "Decimal digits for cancelling series")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0 = hardware)")->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--out", g.out, "Output file (default stdout)");
    app.add_option("--manifest", g.manifest, "Run manifest path (default <out>.manifest.json, or stderr)");

    std::function<Outcome()> action;

    auto* verify = app.add_subcommand("verify", "Identity checks")->require_subcommand(1);
    std::vector<double> l_alpha{-0.4, 0.0, 0.5, 1.0, 2.5}, l_t{0.5, 1.0, 5.0, 10.0, 20.0};
    auto* lommel = verify->add_subcommand("lommel", "Fourier integral of the power semicircle weight vs J_alpha");
    lommel->add_option("--alpha-list", l_alpha)->delimiter(',')->capture_default_str();
    lommel->add_option("--t-list", l_t)->delimiter(',')->capture_default_str();
    lommel->callback([&] { action = [&] { return verify_lommel(g, l_alpha, l_t); }; });

    std::vector<double> w_alpha{0.0, 0.5, 1.0, 2.0}, w_frac{0.2, 0.5, 0.8};
    auto* ws = verify->add_subcommand("ws", "Integral of z^{-2s} J_alpha(z)^2 vs its Gamma form");
    ws->add_option("--alpha-list", w_alpha)->delimiter(',')->capture_default_str();
    ws->add_option("--s-fractions", w_frac, "s as fractions of (0, alpha + 1/2)")->delimiter(',')->capture_default_str();
    ws->callback([&] { action = [&] { return verify_ws(g, w_alpha, w_frac); }; });

    std::string which = "all";
    auto* appendix = verify->add_subcommand("appendix", "Fresnel and two-dimensional Selberg integrals");
    appendix->add_option("--which", which, "fresnel, selberg or all")->capture_default_str();
    appendix->callback([&] { action = [&] { return verify_appendix(g, which); }; });

    auto* vd = app.add_subcommand("vandantzig", "Van Dantzig pairs")->require_subcommand(1);
    double v_alpha = 0.5, grid_max = 5.0;
    std::size_t mc = 100000;
    int points = 41;
    auto* pair = vd->add_subcommand("pair", "Identity chain, Bochner test and Monte Carlo check");
    pair->add_option("--alpha", v_alpha)->capture_default_str();
    pair->add_option("--grid-max", grid_max)->capture_default_str();
    pair->add_option("--grid-points", points)->capture_default_str();
    pair->add_option("--mc", mc, "Monte Carlo sample size")->capture_default_str();
    pair->callback([&] { action = [&] { return vandantzig_pair(g, v_alpha, grid_max, mc, points); }; });

    std::size_t v_count = 1000;
    std::string kind = "subordinated";
    auto* vsample = vd->add_subcommand("sample", "Samples of T_alpha or of B at T_alpha (CSV)");
    vsample->add_option("--alpha", v_alpha)->capture_default_str();
    vsample->add_option("--count", v_count)->capture_default_str();
    vsample->add_option("--kind", kind, "hitting or subordinated")->capture_default_str();
    vsample->callback([&] { action = [&] { return vandantzig_sample(g, v_alpha, v_count, kind); }; });

    auto* gtc = app.add_subcommand("gammatype", "Moments of Gamma type")->require_subcommand(1);
    std::string spec_arg, sa, sb, sc, sd;
    auto* ex = gtc->add_subcommand("exists", "Existence verdict; exit 0 exists, 3 not, 4 undecided");
    ex->add_option("--spec", spec_arg, "JSON {\"a\":[..],\"b\":[..],\"c\":[..],\"d\":[..]} or @file");
    ex->add_option("--a", sa, "D[a b; (c,d)] family: a");
    ex->add_option("--b", sb, "b");
    ex->add_option("--c", sc, "c");
    ex->add_option("--d", sd, "d");
    ex->callback([&] { action = [&] { return gammatype_exists(g, spec_arg, sa, sb, sc, sd); }; });

    std::string ba = "1", bb = "1";
    double u_from = 2.5, u_to = 12.0, u_step = 0.5, resolution = 1e-7;
    std::vector<double> u_list;
    auto* bnd = gtc->add_subcommand("boundary", "Boundary curve f_{a,b}(u) (CSV)");
    bnd->add_option("--a", ba)->capture_default_str();
    bnd->add_option("--b", bb)->capture_default_str();
    bnd->add_option("--u-from", u_from)->capture_default_str();
    bnd->add_option("--u-to", u_to)->capture_default_str();
    bnd->add_option("--u-step", u_step)->capture_default_str();
    bnd->add_option("--u-list", u_list, "Explicit grid, overrides the range")->delimiter(',');
    bnd->add_option("--resolution", resolution)->capture_default_str();
    bnd->callback([&] {
        action = [&] {
            const auto us = u_list.empty() ? range(u_from, u_to, u_step) : u_list;
            return gammatype_boundary(g, rational_flag(ba, "a"), rational_flag(bb, "b"), us, resolution);
        };
    });

    std::vector<double> xs{0.25, 0.5, 0.75, 1.5, 2.0};
    std::optional<double> sigma;
    double T = 0.0;
    auto* den = gtc->add_subcommand("density", "Density by Mellin inversion");
    den->add_option("--spec", spec_arg)->required();
    den->add_option("--x", xs)->delimiter(',')->capture_default_str();
    den->add_option("--sigma", sigma, "Abscissa of the inversion line (default 0)");
    den->add_option("--truncation", T, "Fixed |tau| cutoff (0 = automatic)")->capture_default_str();
    den->callback([&] { action = [&] { return gammatype_density(g, spec_arg, xs, sigma, T); }; });

    std::vector<double> q_xs{-5.0, -1.0, -0.5, -0.1, 0.1, 1.0};
    auto* ql = gtc->add_subcommand("quasilevy", "Quasi-Levy density of log X_{a,b}");
    ql->add_option("--a", ba)->capture_default_str();
    ql->add_option("--b", bb)->capture_default_str();
    ql->add_option("--x", q_xs)->delimiter(',')->capture_default_str();
    ql->callback([&] { action = [&] { return gammatype_quasilevy(g, rational_flag(ba, "a"), rational_flag(bb, "b"), q_xs); }; });

    auto* cvx = gtc->add_subcommand("convexity", "Second differences of f_{a,b}");
    cvx->add_option("--a", ba)->capture_default_str();
    cvx->add_option("--b", bb)->capture_default_str();
    cvx->add_option("--u-list", u_list)->delimiter(',');
    cvx->add_option("--u-from", u_from)->capture_default_str();
    cvx->add_option("--u-to", u_to)->capture_default_str();
    cvx->add_option("--u-step", u_step)->capture_default_str();
    cvx->add_option("--resolution", resolution)->capture_default_str();
    cvx->callback([&] {
        action = [&] {
            const auto us = u_list.empty() ? range(u_from, u_to, u_step) : u_list;
            return gammatype_convexity(g, rational_flag(ba, "a"), rational_flag(bb, "b"), us, resolution);
        };
    });

    auto* smp = app.add_subcommand("sample", "Random samples")->require_subcommand(1);
    std::size_t r_count = 1000;
    auto* rp = smp->add_subcommand("ratio-product", "Beta-Gamma product samples for #c, #d <= 1 (CSV)");
    rp->add_option("--spec", spec_arg)->required();
    rp->add_option("--count", r_count)->capture_default_str();
    rp->callback([&] { action = [&] { return sample_ratio_product(g, spec_arg, r_count); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        const Outcome o = action();
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(g, o, args, wall);
        return o.code;
    } catch (const bp::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const bp::AccuracyError& e) {
        std::cerr << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
        return kTolerance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kTolerance;
    }
}
