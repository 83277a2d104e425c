#pragma once

// Command-line front end. Kept in a header so the test suite can drive
// `run` in-process.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eulerap.hpp"

namespace eulerap::cli {

using json = nlohmann::json;

enum exit_code : int { ok = 0, failure = 1, usage = 2, precision = 3 };

struct JobConfig {
    std::string mode;
    ComplexVal s{2.0, 0.0};
    std::uint64_t q = 1;
    std::uint64_t a = 1;
    std::uint64_t P = 2;
    int L = 10;
    std::vector<ComplexVal> F;
    std::vector<ComplexVal> G{ComplexVal(1.0)};
    std::vector<MultiTerm> terms;
    std::vector<ComplexVal> poly;
    int K = 10;
    int n_max = 40;
    std::optional<std::uint64_t> oracle_limit;
    double eps = 1e-14;
    bool json_output = false;
    unsigned threads = 1;
    bool has_F = false;
    bool has_terms = false;
};

class parse_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
}

inline double parse_double(std::string_view v) {
    v = trim(v);
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
        throw parse_error("malformed number '" + std::string(v) + "'");
    return x;
}

/// Splits on `sep` outside parentheses.
inline std::vector<std::string_view> split(std::string_view v, char sep) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == '(') ++depth;
        if (v[i] == ')') --depth;
        if (v[i] == sep && depth == 0) {
            out.push_back(v.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(v.substr(start));
    return out;
}

/// "re" or "re,im".
inline ComplexVal parse_complex(std::string_view v) {
    const auto parts = split(trim(v), ',');
    if (parts.size() == 1) return {parse_double(parts[0]), 0.0};
    if (parts.size() == 2) return {parse_double(parts[0]), parse_double(parts[1])};
    throw parse_error("expected 're' or 're,im', got '" + std::string(v) + "'");
}

/// Comma-separated ascending coefficients, each "x" or "(re,im)".
inline std::vector<ComplexVal> parse_poly(std::string_view v) {
    std::vector<ComplexVal> out;
    for (auto tok : split(trim(v), ',')) {
        tok = trim(tok);
        if (!tok.empty() && tok.front() == '(') {
            if (tok.back() != ')') throw parse_error("unbalanced parenthesis in '" + std::string(tok) + "'");
            out.push_back(parse_complex(tok.substr(1, tok.size() - 2)));
        } else {
            out.emplace_back(parse_double(tok), 0.0);
        }
    }
    return out;
}

/// "a_re,a_im,u,v;..."
inline std::vector<MultiTerm> parse_terms(std::string_view v) {
    std::vector<MultiTerm> out;
    for (auto tok : split(trim(v), ';')) {
        const auto f = split(trim(tok), ',');
        if (f.size() != 4) throw parse_error("each term needs a_re,a_im,u,v; got '" + std::string(tok) + "'");
        out.push_back({{parse_double(f[0]), parse_double(f[1])}, parse_double(f[2]), parse_double(f[3])});
    }
    return out;
}

inline json to_json(ComplexVal z) { return json::array({z.real(), z.imag()}); }

inline ComplexVal complex_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline json poly_json(const std::vector<ComplexVal>& p) {
    json out = json::array();
    for (auto c : p) out.push_back(to_json(c));
    return out;
}

inline std::vector<ComplexVal> poly_from(const json& j) {
    std::vector<ComplexVal> out;
    for (const auto& c : j) out.push_back(complex_from(c));
    return out;
}

inline std::string format_complex(ComplexVal z) {
    std::ostringstream os;
    os << std::setprecision(17) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

inline bool integral_poly(const std::vector<ComplexVal>& p) {
    for (auto c : p)
        if (c.imag() != 0.0 || c.real() != std::floor(c.real()) || std::abs(c.real()) > 9.0e15) return false;
    return true;
}

}  // namespace detail

inline json spec_json(const JobConfig& c) {
    json spec;
    if (c.mode == "witt") return {{"poly", detail::poly_json(c.poly)}, {"K", c.K}};
    if (c.mode == "characters") return {{"q", c.q}};
    spec["s"] = detail::to_json(c.s);
    if (c.mode != "demo") {
        spec["q"] = c.q;
        spec["a"] = c.a;
        spec["P"] = c.P;
    }
    spec["L"] = c.L;
    if (c.mode == "demo") spec["n_max"] = c.n_max;
    if (c.has_F || c.mode == "rational") {
        spec["F"] = detail::poly_json(c.F);
        spec["G"] = detail::poly_json(c.G);
    }
    if (c.has_terms || c.mode == "multi") {
        json terms = json::array();
        for (const auto& t : c.terms) terms.push_back({t.coeff.real(), t.coeff.imag(), t.u, t.v});
        spec["terms"] = terms;
    }
    spec["oracle_limit"] = c.oracle_limit ? json(*c.oracle_limit) : json(nullptr);
    spec["eps"] = c.eps;
    return spec;
}

inline JobConfig config_from_json(const json& doc) {
    JobConfig c;
    c.mode = doc.at("mode").get<std::string>();
    const auto& spec = doc.at("spec");
    c.json_output = true;
    if (spec.contains("poly")) c.poly = detail::poly_from(spec["poly"]);
    if (spec.contains("K")) c.K = spec["K"].get<int>();
    if (spec.contains("q")) c.q = spec["q"].get<std::uint64_t>();
    if (spec.contains("a")) c.a = spec["a"].get<std::uint64_t>();
    if (spec.contains("P")) c.P = spec["P"].get<std::uint64_t>();
    if (spec.contains("L")) c.L = spec["L"].get<int>();
    if (spec.contains("s")) c.s = detail::complex_from(spec["s"]);
    if (spec.contains("n_max")) c.n_max = spec["n_max"].get<int>();
    if (spec.contains("F")) {
        c.has_F = true;
        c.F = detail::poly_from(spec["F"]);
        c.G = detail::poly_from(spec.at("G"));
    }
    if (spec.contains("terms")) {
        c.has_terms = true;
        for (const auto& t : spec["terms"])
            c.terms.push_back({{t.at(0).get<double>(), t.at(1).get<double>()}, t.at(2).get<double>(), t.at(3).get<double>()});
    }
    if (spec.contains("oracle_limit") && !spec["oracle_limit"].is_null())
        c.oracle_limit = spec["oracle_limit"].get<std::uint64_t>();
    if (spec.contains("eps")) c.eps = spec["eps"].get<double>();
    return c;
}

namespace detail {

inline ProductSpec product_spec(const JobConfig& c) {
    if (c.mode == "rational" || (c.mode == "oracle" && c.has_F))
        return RationalProductSpec{CPolynomial(c.F), CPolynomial(c.G), c.q, c.a, c.P, c.L};
    if (c.mode == "multi" || (c.mode == "oracle" && c.has_terms))
        return MultiTermSpec{c.terms, c.s, c.q, c.a, c.P, c.L};
    if (c.mode == "demo") return MultiTermSpec{{{-1.0, 1.0, 0.0}, {1.0, 2.0, -1.0}}, c.s, 1, 1, 2, c.L};
    return APProductSpec{c.s, c.q, c.a, c.P, c.L};
}

inline std::uint64_t table_limit(const JobConfig& c) {
    std::uint64_t limit = 1'000'000;
    if (c.oracle_limit) limit = std::max(limit, *c.oracle_limit);
    return std::max(limit, 2 * c.P);
}

inline int run_witt(const JobConfig& c, std::ostream& out) {
    json result{{"mode", c.mode}, {"spec", spec_json(c)}};
    const auto K = static_cast<std::size_t>(c.K);
    if (K < 1) throw error(errc::invalid_argument, "witt requires K >= 1");
    const CPolynomial H(c.poly);
    result["beta"] = beta_bound(H);
    if (integral_poly(c.poly)) {
        std::vector<BigInt> coeffs;
        for (auto z : c.poly) coeffs.emplace_back(static_cast<long long>(z.real()));
        const Polynomial<BigInt> Hz(coeffs);
        const auto s = power_sums(Hz, K);
        const auto b = witt_b(Hz, K);
        json js = json::array(), jb = json::array();
        for (const auto& v : s.values) js.push_back(v.str());
        for (const auto& v : b.values) jb.push_back(v.str());
        result["exact"] = true;
        result["power_sums"] = js;
        result["b"] = jb;
    } else {
        const auto s = power_sums(H, K);
        const auto b = witt_b(H, K);
        result["exact"] = false;
        result["power_sums"] = poly_json(s.values);
        result["b"] = poly_json(b.values);
    }
    if (c.json_output) {
        out << result.dump() << "\n";
        return ok;
    }
    auto show = [&](const char* name, const json& arr) {
        out << name << ":";
        for (const auto& v : arr) {
            if (v.is_string())
                out << " " << v.get<std::string>();
            else
                out << " (" << v[0].get<double>() << "," << v[1].get<double>() << ")";
        }
        out << "\n";
    };
    show("s_H", result["power_sums"]);
    show("b_H", result["b"]);
    out << "beta: " << result["beta"].get<double>() << "\n";
    return ok;
}

inline int run_characters(const JobConfig& c, std::ostream& out) {
    const auto group = character_group(c.q);
    json chars = json::array();
    for (std::size_t i = 0; i < group.size(); ++i) {
        const auto& chi = group[i];
        json values = json::array();
        for (std::uint64_t n = 0; n < c.q; ++n)
            values.push_back(chi.is_zero(n) ? json(nullptr) : json(chi.angle(n).str()));
        chars.push_back({{"index", i}, {"order", chi.order()}, {"values", values}});
    }
    if (c.json_output) {
        out << json{{"mode", c.mode}, {"spec", spec_json(c)}, {"characters", chars}}.dump() << "\n";
        return ok;
    }
    out << "characters mod " << c.q << ": " << group.size() << " (values are angles r/N of exp(2 pi i r/N))\n";
    for (const auto& ch : chars) {
        out << "chi_" << ch["index"].get<std::size_t>() << " order " << ch["order"].get<std::uint64_t>() << ":";
        for (const auto& v : ch["values"]) out << " " << (v.is_null() ? std::string("0") : "e(" + v.get<std::string>() + ")");
        out << "\n";
    }
    return ok;
}

inline int run_product(const JobConfig& c, std::ostream& out) {
    EvalParams params;
    params.target_eps = c.eps;
    const Context ctx = make_context(table_limit(c), params, c.threads);
    const ProductSpec spec = product_spec(c);

    json result{{"mode", c.mode}, {"spec", spec_json(c)}};
    std::optional<ProductResult> r;
    if (c.mode == "ap") r = ap_product(std::get<APProductSpec>(spec), ctx);
    if (c.mode == "rational") r = rational_product(std::get<RationalProductSpec>(spec), ctx);
    if (c.mode == "multi") r = multi_term_product(std::get<MultiTermSpec>(spec), ctx);
    if (c.mode == "demo") r = continuation_demo(c.s, c.n_max, ctx, c.L);

    std::optional<OracleResult> o;
    if (c.mode == "oracle" || c.oracle_limit) {
        const std::uint64_t limit = c.oracle_limit.value_or(10'000'000);
        const Context octx = c.oracle_limit ? ctx : make_context(limit, params, c.threads);
        o = oracle_log_product({spec, limit}, *octx.primes, c.threads);
    }

    if (r) {
        result["value"] = to_json(r->value());
        result["log_value"] = to_json(r->log_value);
        result["bound"] = r->total_bound;
        result["closed_form_bound"] = r->closed_form_bound;
    } else {
        result["value"] = to_json(std::exp(o->log_value));
        result["log_value"] = to_json(o->log_value);
        result["bound"] = o->tail_bound;
    }
    if (o) {
        json oj{{"log_value", to_json(o->log_value)}, {"tail_bound", o->tail_bound}};
        if (r) {
            const double delta = std::abs(r->log_value - o->log_value);
            oj["delta"] = delta;
            oj["consistent"] = delta <= r->total_bound + o->tail_bound;
        }
        result["oracle"] = oj;
    }

    if (c.json_output) {
        out << result.dump() << "\n";
        return ok;
    }
    out << std::setprecision(17);
    out << "mode:      " << c.mode << "\n";
    out << "value:     " << format_complex(complex_from(result["value"])) << "\n";
    out << "log_value: " << format_complex(complex_from(result["log_value"])) << "\n";
    out << "bound:     " << result["bound"].get<double>() << "\n";
    if (result.contains("oracle")) {
        const auto& oj = result["oracle"];
        out << "oracle log_value:  " << format_complex(complex_from(oj["log_value"])) << "\n";
        out << "oracle tail_bound: " << oj["tail_bound"].get<double>() << "\n";
        if (oj.contains("delta"))
            out << "oracle delta:      " << oj["delta"].get<double>()
                << (oj["consistent"].get<bool>() ? " (within bounds)" : " (OUTSIDE bounds)") << "\n";
    }
    return ok;
}

}  // namespace detail

inline int execute(const JobConfig& c, std::ostream& out) {
    if (c.mode == "witt") return detail::run_witt(c, out);
    if (c.mode == "characters") return detail::run_characters(c, out);
    return detail::run_product(c, out);
}

/// Parses argv (without the program name) and runs the job.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Euler products over primes in arithmetic progressions", "euler-ap"};
    app.require_subcommand(1);

    std::string s_str, F_str, G_str, terms_str, poly_str, from_json;
    JobConfig cfg;
    std::uint64_t oracle_limit = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--s", s_str, "exponent as re,im");
        sub->add_option("--q", cfg.q, "modulus");
        sub->add_option("--a", cfg.a, "residue class");
        sub->add_option("--P", cfg.P, "smallest prime in the product");
        sub->add_option("--L", cfg.L, "truncation parameter");
        sub->add_option("--F", F_str, "numerator coefficients, ascending");
        sub->add_option("--G", G_str, "denominator coefficients, ascending");
        sub->add_option("--terms", terms_str, "a_re,a_im,u,v;...");
        sub->add_option("--check-oracle", oracle_limit, "compare with the brute-force product over primes <= LIMIT");
        sub->add_option("--nmax", cfg.n_max, "demo: keep m1 + 2 m2 <= NMAX");
        sub->add_option("--poly", poly_str, "witt: H coefficients, ascending, H(0) = 1");
        sub->add_option("--K", cfg.K, "witt: number of coefficients");
        sub->add_flag("--json", cfg.json_output, "emit JSON");
        sub->add_option("--from-json", from_json, "re-run the job recorded in a JSON output file");
        sub->add_option("--threads", cfg.threads, "worker threads (1 = reference order)");
    };
    const std::pair<const char*, const char*> modes[] = {
        {"ap", "prod (1 - p^-s) over p = a (q), p >= P"},
        {"rational", "prod (1 - F(1/p)/G(1/p)) over p = a (q), p >= P"},
        {"multi", "prod (1 - sum a_l p^-(u_l s + v_l)) over p = a (q), p >= P"},
        {"demo", "prod (1 + p^-s - p^(1-2s)) over all p via zeta factors"},
        {"oracle", "brute-force product over primes <= LIMIT"},
        {"witt", "power sums and Witt exponents of a polynomial H with H(0) = 1"},
        {"characters", "Dirichlet characters mod q"},
    };
    for (const auto& [name, help] : modes) add_common(app.add_subcommand(name, help));

    try {
        std::vector<std::string> argv(args.rbegin(), args.rend());
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    try {
        const auto subs = app.get_subcommands();
        const std::string mode = subs.front()->get_name();
        if (const char* env = std::getenv("EULER_AP_EPS")) {
            cfg.eps = detail::parse_double(env);
            if (!(cfg.eps > 0.0)) throw parse_error("EULER_AP_EPS must be positive");
        }
        if (!from_json.empty()) {
            std::ifstream in(from_json);
            if (!in) throw parse_error("cannot read " + from_json);
            const unsigned threads = cfg.threads;
            cfg = config_from_json(json::parse(in));
            cfg.threads = threads;
            if (cfg.mode != mode) throw parse_error("--from-json file records mode '" + cfg.mode + "'");
        } else {
            cfg.mode = mode;
            if (!s_str.empty()) cfg.s = detail::parse_complex(s_str);
            if (!F_str.empty()) {
                cfg.F = detail::parse_poly(F_str);
                cfg.has_F = true;
            }
            if (!G_str.empty()) cfg.G = detail::parse_poly(G_str);
            if (!terms_str.empty()) {
                cfg.terms = detail::parse_terms(terms_str);
                cfg.has_terms = true;
            }
            if (!poly_str.empty()) cfg.poly = detail::parse_poly(poly_str);
            if (oracle_limit) cfg.oracle_limit = oracle_limit;
            if (mode == "rational" && !cfg.has_F) throw parse_error("rational mode needs --F");
            if (mode == "multi" && !cfg.has_terms) throw parse_error("multi mode needs --terms");
            if (mode == "witt" && cfg.poly.empty()) throw parse_error("witt mode needs --poly");
        }
        if (cfg.threads == 0) throw parse_error("--threads must be >= 1");
        return execute(cfg, out);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const json::exception& e) {
        err << "error: bad JSON input: " << e.what() << "\n";
        return usage;
    } catch (const error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        switch (e.code()) {
        case errc::invalid_argument:
        case errc::out_of_domain:
        case errc::invalid_spec: return usage;
        case errc::precision_unreachable: return precision;
        case errc::internal_error: return failure;
        }
        return failure;
    }
}

}  // namespace eulerap::cli
