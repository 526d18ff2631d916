#include "cli_commands.hpp"

#include "somos/curves.hpp"
#include "somos/divis.hpp"
#include "somos/eds.hpp"
#include "somos/somos.hpp"

#include <functional>
#include <map>

namespace somos::cli {

using nlohmann::json;

namespace {

std::string str(const BigInt& x) { return somos::to_string(x); }
std::string str(const Rat& x) { return somos::to_string(x); }
std::string str(bool b) { return b ? "true" : "false"; }

template <class T>
std::string str_of(const T& x)
{
    return RingTraits<T>::to_string(x);
}

json opt_json(const std::optional<long>& x)
{
    return x ? json(*x) : json(nullptr);
}

std::string opt_str(const std::optional<long>& x)
{
    return x ? std::to_string(*x) : "";
}

/// Runs f, turning parse failures into a ConfigError for `key`.
template <class F>
auto parsed(const std::string& key, F&& f) -> decltype(f())
{
    try {
        return f();
    }
    catch (const MathError& e) {
        if (e.kind() != ErrorKind::ParseError)
            throw;
        throw ConfigError(key, "field '" + key + "': " + e.what());
    }
}

// --- sequence inputs ------------------------------------------------------

struct Scalar {
    std::optional<Rat> numeric;
    SparsePoly symbolic;
};

Scalar parse_scalar(const std::string& key, const std::string& text)
{
    Scalar s;
    try {
        s.numeric = parse_rat(text);
        return s;
    }
    catch (const MathError&) {
    }
    s.symbolic = parsed(key, [&] { return parse_poly(text); });
    return s;
}

SparsePoly as_poly(const std::string& key, const Scalar& s)
{
    if (!s.numeric)
        return s.symbolic;
    if (!is_integer(*s.numeric))
        throw ConfigError(key, "field '" + key + "': symbolic runs need integer constants, got " + str(*s.numeric));
    return SparsePoly(BigInt(s.numeric->get_num()));
}

struct SeqInput {
    int k = 4;
    long from = -20, to = 200;
    ExtendOptions opt;
    bool numeric = true;
    SomosSpec<Rat> num;
    SomosSpec<SparsePoly> sym;
};

int parse_k(const Params& p)
{
    const long k = p.integer("k");
    if (k != 4 && k != 5)
        throw ConfigError("k", "field 'k': expected 4 or 5, got " + std::to_string(k));
    return static_cast<int>(k);
}

SeqInput parse_sequence(const Params& p)
{
    SeqInput in;
    in.k = parse_k(p);
    in.from = p.integer("from");
    in.to = p.integer("to");
    if (in.from > in.to)
        throw ConfigError("from", "field 'from': must not exceed 'to'");
    in.opt.symbolic_max_index = p.integer("budget");

    const Scalar alpha = parse_scalar("alpha", p.str("alpha"));
    const Scalar beta = parse_scalar("beta", p.str("beta"));
    std::vector<Scalar> init;
    if (p.has("init")) {
        for (const auto& item : p.list("init"))
            init.push_back(parse_scalar("init", item));
        if (static_cast<int>(init.size()) != in.k)
            throw ConfigError("init", "field 'init': expected " + std::to_string(in.k) + " values, got " +
                                          std::to_string(init.size()));
    }
    else {
        init.assign(static_cast<std::size_t>(in.k), Scalar{Rat(1), {}});
    }

    in.numeric = alpha.numeric && beta.numeric;
    for (const auto& s : init)
        in.numeric = in.numeric && s.numeric.has_value();
    if (in.numeric) {
        in.num = SomosSpec<Rat>{in.k, *alpha.numeric, *beta.numeric, {}};
        for (const auto& s : init)
            in.num.initials.push_back(*s.numeric);
    }
    else {
        in.sym = SomosSpec<SparsePoly>{in.k, as_poly("alpha", alpha), as_poly("beta", beta), {}};
        for (const auto& s : init)
            in.sym.initials.push_back(as_poly("init", s));
    }
    return in;
}

template <class T>
SeqWindow<T> sequence_window(const SomosSpec<T>& spec, const SeqInput& in)
{
    const auto w = extend(spec, std::min(in.from, 1L), std::max(in.to, static_cast<long>(in.k)), in.opt);
    return w.slice(in.from, in.to);
}

SeqWindow<Rat> numeric_window(const SeqInput& in, const std::string& command)
{
    if (!in.numeric)
        throw ConfigError("alpha", command + " needs numeric alpha, beta and init");
    return sequence_window(in.num, in);
}

json window_json(const std::vector<std::string>& terms, long lo)
{
    return {{"lo", lo}, {"hi", lo + static_cast<long>(terms.size()) - 1}, {"terms", terms}};
}

Table index_value_table(long lo, const std::vector<std::string>& terms)
{
    Table t{{"n", "value"}, {}};
    for (std::size_t i = 0; i < terms.size(); ++i)
        t.rows.push_back({std::to_string(lo + static_cast<long>(i)), terms[i]});
    return t;
}

// --- commands ---------------------------------------------------------------

CommandResult cmd_seq(const Params& p)
{
    const SeqInput in = parse_sequence(p);
    std::vector<std::string> terms;
    json results;
    if (in.numeric) {
        const auto w = sequence_window(in.num, in);
        bool integral = true;
        for (const auto& t : w.terms()) {
            terms.push_back(str(t));
            integral = integral && is_integer(t);
        }
        results = window_json(terms, w.lo());
        results["domain"] = "rational";
        results["integral"] = integral;
    }
    else {
        const auto w = sequence_window(in.sym, in);
        for (const auto& t : w.terms())
            terms.push_back(t.to_string());
        results = window_json(terms, w.lo());
        results["domain"] = "symbolic";
    }
    return {results, index_value_table(in.from, terms)};
}

template <class T>
CommandResult invariants_for(const SomosSpec<T>& spec, const SeqWindow<T>& w, int k)
{
    const std::array<std::string, 2> names = k == 4 ? std::array<std::string, 2>{"T", "I"}
                                                    : std::array<std::string, 2>{"S", "J"};
    json rows = json::array();
    Table table{{"at", names[0], names[1]}, {}};
    std::array<std::optional<std::string>, 2> first;
    std::array<bool, 2> constant{true, true};
    for (long at = w.lo(); at + k - 1 <= w.hi(); ++at) {
        std::array<std::string, 2> vals;
        if (k == 4) {
            const auto inv = invariants4(spec, w, at);
            vals = {str_of(inv.T), str_of(inv.I)};
        }
        else {
            const auto inv = invariants5(spec, w, at);
            vals = {str_of(inv.S), str_of(inv.J)};
        }
        for (std::size_t i = 0; i < 2; ++i) {
            if (!first[i])
                first[i] = vals[i];
            constant[i] = constant[i] && *first[i] == vals[i];
        }
        rows.push_back({{"at", at}, {names[0], vals[0]}, {names[1], vals[1]}});
        table.rows.push_back({std::to_string(at), vals[0], vals[1]});
    }
    json results = {{"k", k}, {"rows", rows}};
    results["constant"] = {{names[0], constant[0]}, {names[1], constant[1]}};
    return {results, table};
}

CommandResult cmd_invariants(const Params& p)
{
    const SeqInput in = parse_sequence(p);
    if (in.numeric)
        return invariants_for(in.num, sequence_window(in.num, in), in.k);
    return invariants_for(in.sym, sequence_window(in.sym, in), in.k);
}

CommandResult cmd_symmetry(const Params& p)
{
    const SeqInput in = parse_sequence(p);
    const std::string rule_name = p.str("rule");
    SymmetryRule rule;
    if (rule_name == "palindromic")
        rule = SymmetryRule::palindromic;
    else if (rule_name == "fibonacci_sign")
        rule = SymmetryRule::fibonacci_sign;
    else
        throw ConfigError("rule", "field 'rule': expected palindromic or fibonacci_sign, got '" + rule_name + "'");
    const SymmetryReport rep =
        in.numeric ? symmetry_check(in.k, sequence_window(in.num, in), rule)
                   : symmetry_check(in.k, sequence_window(in.sym, in), rule);
    return {json{{"rule", rule_name},
                 {"pairs_checked", rep.pairs_checked},
                 {"violations", rep.violations},
                 {"ok", rep.ok()}},
            std::nullopt};
}

CommandResult cmd_period(const Params& p)
{
    const SeqInput in = parse_sequence(p);
    const BigInt m = p.big("modulus");
    if (m < 2)
        throw ConfigError("modulus", "field 'modulus': must be at least 2");
    const auto w = to_integer_window(numeric_window(in, "period"));
    const PeriodReport rep = period_mod(w, m, in.k);
    std::vector<std::string> cycle;
    for (const auto& c : rep.cycle)
        cycle.push_back(str(c));
    return {json{{"modulus", str(rep.modulus)},
                 {"lo", w.lo()},
                 {"hi", w.hi()},
                 {"period", opt_json(rep.period)},
                 {"cycle", cycle},
                 {"contains_zero", rep.contains_zero}},
            std::nullopt};
}

CommandResult cmd_transform(const Params& p)
{
    const auto kind = parse_transform(p.str("kind"));
    if (!kind)
        throw ConfigError("kind", "field 'kind': expected mg, mgs, somos5_abcba or sign_twist, got '" +
                                      p.str("kind") + "'");
    TransformParams tp;
    tp.numeric = p.flag("numeric");
    auto opt_rat = [&](const std::string& key) { return p.has(key) ? std::optional<Rat>(p.rat(key)) : std::nullopt; };
    tp.gamma = opt_rat("gamma");
    tp.delta = opt_rat("delta");
    tp.a = opt_rat("a");
    tp.b = opt_rat("b");
    tp.c = opt_rat("c");
    tp.alpha_at = p.rat("alpha-at");
    tp.beta_at = p.rat("beta-at");
    const long nmax = p.integer("nmax");
    if (nmax < 1)
        throw ConfigError("nmax", "field 'nmax': must be positive");
    const TransformReport rep = verify_transform(*kind, static_cast<int>(nmax), tp);
    return {json{{"kind", std::string(to_string(rep.kind))},
                 {"symbolic", rep.symbolic},
                 {"checked", rep.checked},
                 {"mismatches", rep.mismatches},
                 {"ok", rep.ok()}},
            std::nullopt};
}

json family_json(const FamilyReport& r)
{
    json v = json::array();
    for (const auto& x : r.violations)
        v.push_back({x.m, x.n});
    return {{"checked", r.checked}, {"skipped", r.skipped}, {"violations", v}, {"ok", r.ok()}};
}

CommandResult cmd_eds(const Params& p)
{
    const auto init = p.bigs("init");
    if (init.size() != 4)
        throw ConfigError("init", "field 'init': expected a1,a2,a3,a4");
    const long from = p.integer("from"), to = p.integer("to"), kmax = p.integer("kmax"), mmax = p.integer("mmax");
    if (from > 1 || to < 4)
        throw ConfigError("from", "field 'from': the window must contain 1..4");
    const auto w = eds_extend(EdsSpec<BigInt>::standard(init[0], init[1], init[2], init[3]), from, to);

    std::vector<std::string> terms;
    for (const auto& t : w.terms())
        terms.push_back(str(t));
    json results = window_json(terms, w.lo());
    results["proper"] = is_proper(init[0], init[1], init[2], init[3]);

    std::vector<long> anti;
    if (w.contains(0) && w[0] != 0)
        anti.push_back(0);
    for (long n = 1; w.contains(n) && w.contains(-n); ++n)
        if (w[-n] != -w[n])
            anti.push_back(n);
    results["antisymmetry"] = {{"violations", anti}, {"ok", anti.empty()}};

    json divisor_sets = json::array();
    bool all_match = true;
    for (long k = 2; k <= kmax; ++k) {
        if (!w.contains(k))
            break;
        const auto set = divisor_set(w, k);
        std::vector<long> extra, missing;
        for (long m = w.lo(); m <= w.hi(); ++m) {
            const bool in_set = std::find(set.begin(), set.end(), m) != set.end();
            if (in_set && m % k != 0)
                extra.push_back(m);
            if (!in_set && m % k == 0)
                missing.push_back(m);
        }
        all_match = all_match && extra.empty() && missing.empty();
        divisor_sets.push_back({{"k", k}, {"a_k", str(w[k])}, {"extra", extra}, {"missing", missing},
                                {"equals_kZ", extra.empty() && missing.empty()}});
    }
    results["divisor_sets"] = divisor_sets;
    results["divisor_sets_equal_kZ"] = all_match;

    const auto gcd_fail = consecutive_gcd_failures(w.slice(std::max(w.lo(), 1L), w.hi()));
    results["consecutive_coprime"] = {{"failures", gcd_fail}, {"ok", gcd_fail.empty()}};

    const PairRange grid{1, mmax, 1, mmax};
    results["for"] = family_json(verify_family_for(w, grid));
    results["fora2"] = family_json(verify_family_fora2(w, grid));

    if (p.flag("generic")) {
        ExtendOptions opt;
        opt.symbolic_max_index = p.integer("budget");
        const long lo = std::max(from, -opt.symbolic_max_index), hi = std::min(to, opt.symbolic_max_index);
        const auto g = eds_extend(generic_eds_spec(), lo, hi, opt);
        json generic = json::array();
        for (long k = 2; k <= kmax && g.contains(k); ++k) {
            const auto mism = divisor_set_mismatches(g, k);
            generic.push_back({{"k", k}, {"mismatches", mism}, {"ok", mism.empty()}});
        }
        results["generic"] = {{"lo", lo}, {"hi", hi}, {"divisor_sets", generic}};
    }
    return {results, std::nullopt};
}

template <class B>
json companion_json(const CompanionPair<B>& pair, long mmax)
{
    const CompanionReport rep = verify_companion(pair, PairRange{1, mmax, 1, mmax});
    json out = {{"k", pair.k}, {"for1", family_json(rep.for1)}, {"for2", family_json(rep.for2)}, {"ok", rep.ok()}};
    if (pair.k == 5) {
        json rows = json::array();
        for (const auto& r : companion5_ratio(pair, 8))
            rows.push_back({{"k", r.k}, {"ratio_holds", r.ratio_holds}, {"squares_equal", r.squares_equal}});
        out["ratio"] = rows;
        out["parity_ok"] = companion_parity_ok(pair.a[0]) && companion_parity_ok(pair.a[1]);
    }
    else {
        out["parity_ok"] = companion_parity_ok(pair.a[0]);
    }
    return out;
}

CommandResult cmd_companion(const Params& p)
{
    const int k = parse_k(p);
    const long from = p.integer("from"), to = p.integer("to"), mmax = p.integer("mmax");
    ExtendOptions opt;
    opt.symbolic_max_index = p.integer("budget");
    const Scalar alpha = parse_scalar("alpha", p.str("alpha")), beta = parse_scalar("beta", p.str("beta"));
    json results;
    if (alpha.numeric && beta.numeric) {
        results = k == 4 ? companion_json(companion4<Rat>(*alpha.numeric, *beta.numeric, from, to, opt), mmax)
                         : companion_json(companion5<Rat>(*alpha.numeric, *beta.numeric, from, to, opt), mmax);
        results["symbolic"] = false;
    }
    else {
        const SparsePoly a = as_poly("alpha", alpha), b = as_poly("beta", beta);
        results = k == 4 ? companion_json(companion4<SparsePoly>(a, b, from, to, opt), mmax)
                         : companion_json(companion5<SparsePoly>(a, b, from, to, opt), mmax);
        results["symbolic"] = true;
    }
    return {results, std::nullopt};
}

std::string verdict(Verdict v) { return std::string(to_string(v)); }

json gap_report_json(const GapReport& r)
{
    return {{"p", str(r.p)},
            {"r", r.r},
            {"lo", r.lo},
            {"hi", r.hi},
            {"occurrences", r.occurrences},
            {"is_ap", r.is_ap},
            {"first", opt_json(r.first)},
            {"gap", opt_json(r.gap)}};
}

json gap_scan_json(const GapScan& s)
{
    json reports = json::array();
    for (const auto& r : s.reports)
        reports.push_back(gap_report_json(r));
    json profile = json::array();
    for (const auto& [n, v] : s.valuation_profile)
        profile.push_back({n, v});
    return {{"p", str(s.p)},
            {"lo", s.lo},
            {"hi", s.hi},
            {"r_max", s.r_max},
            {"reports", reports},
            {"valuation_profile", profile},
            {"zero_terms", s.zero_terms},
            {"classification", std::string(to_string(s.classification))},
            {"w", s.w ? json(*s.w) : json(nullptr)},
            {"hasse_bound", s.hasse_bound},
            {"observations",
             {{"equally_spaced", verdict(s.equally_spaced)},
              {"gap_bounded", verdict(s.gap_bounded)},
              {"square_gap", verdict(s.square_gap)},
              {"power_gaps", verdict(s.power_gaps)}}}};
}

BigInt parse_prime(const std::string& key, const BigInt& value)
{
    if (value < 2 || !is_probable_prime(value))
        throw ConfigError(key, "field '" + key + "': " + str(value) + " is not prime");
    return value;
}

int parse_rmax(const Params& p)
{
    const long r = p.integer("rmax");
    if (r < 1 || r > 64)
        throw ConfigError("rmax", "field 'rmax': expected 1..64");
    return static_cast<int>(r);
}

CommandResult cmd_gaps(const Params& p)
{
    const SeqInput in = parse_sequence(p);
    const BigInt prime = parse_prime("p", p.big("p"));
    const GapScan s = gap_scan(numeric_window(in, "gaps"), prime, parse_rmax(p));
    Table t{{"p", "r", "occurrences", "is_ap", "gap", "first"}, {}};
    for (const auto& r : s.reports)
        t.rows.push_back({str(r.p), std::to_string(r.r), std::to_string(r.occurrences.size()), str(r.is_ap),
                          opt_str(r.gap), opt_str(r.first)});
    return {gap_scan_json(s), t};
}

CommandResult cmd_robinson(const Params& p)
{
    const SeqInput in = parse_sequence(p);
    std::vector<BigInt> primes;
    for (const auto& q : p.bigs("primes"))
        primes.push_back(parse_prime("primes", q));
    const auto rep = robinson_report(numeric_window(in, "robinson"), primes, parse_rmax(p));
    json rows = json::array();
    Table t{{"p", "N1", "first", "equally_spaced", "gap_bounded", "square_gap", "power_gaps", "classification", "w",
             "hasse_bound"},
            {}};
    for (const auto& s : rep.rows) {
        rows.push_back(gap_scan_json(s));
        const auto& r1 = s.reports.front();
        t.rows.push_back({str(s.p), r1.is_ap ? opt_str(r1.gap) : "", opt_str(r1.first), verdict(s.equally_spaced),
                          verdict(s.gap_bounded), verdict(s.square_gap), verdict(s.power_gaps),
                          std::string(to_string(s.classification)), s.w ? std::to_string(*s.w) : "",
                          std::to_string(s.hasse_bound)});
    }
    return {json{{"rows", rows}}, t};
}

CommandResult cmd_polydiv(const Params& p)
{
    const int k = parse_k(p);
    const long n = p.integer("n");
    const auto ls = p.integers("l");
    if (ls.empty())
        throw ConfigError("l", "field 'l': at least one multiplier");
    ExtendOptions opt;
    opt.symbolic_max_index = p.integer("budget");
    const long d = 2 * n - k - 1;
    long lo = std::min(1L, n), hi = std::max(static_cast<long>(k), n);
    for (long l : ls) {
        lo = std::min(lo, n + l * d);
        hi = std::max(hi, n + l * d);
    }
    const auto spec =
        unit_spec<SparsePoly>(k, SparsePoly::variable(Var::alpha), SparsePoly::variable(Var::beta), SparsePoly(1));
    const auto w = extend(spec, lo, hi, opt);
    json rows = json::array();
    Table t{{"k", "n", "l", "d", "target", "divides"}, {}};
    bool all = true;
    for (long l : ls) {
        const auto r = poly_div_check(w, k, n, l);
        all = all && r.divides;
        rows.push_back({{"l", l}, {"target", r.target}, {"divides", r.divides}});
        t.rows.push_back({std::to_string(k), std::to_string(n), std::to_string(l), std::to_string(r.d),
                          std::to_string(r.target), str(r.divides)});
    }
    return {json{{"k", k}, {"n", n}, {"d", d}, {"rows", rows}, {"all_divide", all}}, t};
}

CommandResult cmd_laurent(const Params& p)
{
    const int k = parse_k(p);
    const long from = p.integer("from"), to = p.integer("to");
    if (from > to)
        throw ConfigError("from", "field 'from': must not exceed 'to'");
    ExtendOptions opt;
    opt.symbolic_max_index = p.integer("budget");
    const LaurentElem alpha(parsed("alpha", [&] { return parse_poly(p.str("alpha")); }));
    const LaurentElem beta(parsed("beta", [&] { return parse_poly(p.str("beta")); }));
    SomosSpec<LaurentElem> spec{k, alpha, beta, {}};
    for (int i = 1; i <= k; ++i)
        spec.initials.push_back(LaurentElem::variable(initial_var(i)));
    const auto w = extend(spec, std::min(from, 1L), std::max(to, static_cast<long>(k)), opt).slice(from, to);
    const bool values = p.flag("values");
    json rows = json::array();
    Table t{{"n", "terms", "denominator"}, {}};
    if (values)
        t.columns.push_back("value");
    for (long n = w.lo(); n <= w.hi(); ++n) {
        const LaurentElem& x = w[n];
        json row = {{"n", n}, {"terms", x.size()}, {"denominator", x.den().to_string()}};
        std::vector<std::string> cells{std::to_string(n), std::to_string(x.size()), x.den().to_string()};
        if (values) {
            row["value"] = x.to_string();
            cells.push_back(x.to_string());
        }
        rows.push_back(row);
        t.rows.push_back(cells);
    }
    return {json{{"k", k}, {"lo", w.lo()}, {"hi", w.hi()}, {"rows", rows}, {"all_divisions_exact", true}}, t};
}

CommandResult cmd_closure(const Params& p)
{
    const auto seed = p.integers("seed");
    const auto r = closure_oracle(seed, p.integer("lo"), p.integer("hi"));
    const long g = seed_difference_gcd(seed);
    const bool consistent = r.closure.size() <= 1 || (r.is_ap && r.difference && *r.difference == g);
    return {json{{"seed", r.seed},
                 {"lo", r.lo},
                 {"hi", r.hi},
                 {"closure", r.closure},
                 {"size", r.closure.size()},
                 {"is_ap", r.is_ap},
                 {"difference", opt_json(r.difference)},
                 {"seed_difference_gcd", g},
                 {"difference_matches_seed_gcd", consistent}},
            std::nullopt};
}

CommandResult cmd_conjecture(const Params& p)
{
    const int k = parse_k(p);
    const long mmax = p.integer("mmax");
    if (mmax < 0)
        throw ConfigError("mmax", "field 'mmax': must be non-negative");
    const auto r = conjecture_check(k, p.integer("n"), static_cast<int>(mmax), p.integer("from"), p.integer("to"),
                                    p.integer("budget"));
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"m", e.m},
                           {"modulus", str(e.modulus)},
                           {"predicted_index", e.predicted_l},
                           {"divides_at_predicted", e.divides_at_predicted},
                           {"occurrences", e.occurrences},
                           {"predicted_in_occurrences", e.predicted_in_occurrences}});
    return {json{{"k", r.k},
                 {"n", r.n},
                 {"q", str(r.q)},
                 {"d", r.d},
                 {"scan_lo", r.scan_lo},
                 {"scan_hi", r.scan_hi},
                 {"entries", entries},
                 {"nested", r.nested}},
            std::nullopt};
}

CommandResult cmd_cavachi(const Params& p)
{
    const auto r = cavachi_check(p.integer("nlo"), p.integer("nhi"), p.integer("mlo"), p.integer("mhi"),
                                 p.integer("exmax"), p.integer("budget"));
    Table t{{"rule", "n", "m", "fn", "index", "divides"}, {}};
    auto rows = [&](const std::vector<CavachiRow>& src, const std::string& rule) {
        json out = json::array();
        for (const auto& row : src) {
            out.push_back({{"n", row.n}, {"m", row.m}, {"fn", str(row.fn)}, {"index", str(row.index)},
                           {"divides", row.divides}});
            t.rows.push_back({rule, std::to_string(row.n), std::to_string(row.m), str(row.fn), str(row.index),
                              str(row.divides)});
        }
        return out;
    };
    json general = rows(r.general, "general");
    json exceptional = rows(r.exceptional, "exceptional");
    return {json{{"general", general}, {"exceptional", exceptional}, {"ok", r.ok()}}, t};
}

struct CurveInput {
    BigInt p;
    std::array<Rat, 4> coeffs;
    RatCoord x, y;
    std::optional<Rat> adjoin;
    std::optional<std::array<Rat, 3>> transform;
};

CurveInput parse_curve(const Params& p)
{
    CurveInput in;
    in.p = parse_prime("p", p.big("p"));
    const auto c = p.rats("c");
    if (c.size() != 4)
        throw ConfigError("c", "field 'c': expected four coefficients c3,c2,c1,c0");
    std::copy(c.begin(), c.end(), in.coeffs.begin());
    in.x = parsed("x", [&] { return parse_coord(p.str("x")); });
    in.y = parsed("y", [&] { return parse_coord(p.str("y")); });
    if (p.has("adjoin"))
        in.adjoin = p.rat("adjoin");
    if (p.has("transform")) {
        const auto t = p.rats("transform");
        if (t.size() != 3)
            throw ConfigError("transform", "field 'transform': expected u,r,w");
        in.transform = std::array<Rat, 3>{t[0], t[1], t[2]};
    }
    return in;
}

json curve_json(const CurveInput& in, const PreparedPoint& pp, const std::array<Rat, 4>& used,
                const std::array<RatCoord, 2>& point)
{
    const Curve& c = pp.curve;
    std::vector<std::string> given, rational, reduced;
    for (const auto& x : in.coeffs)
        given.push_back(str(x));
    for (const auto& x : used)
        rational.push_back(str(x));
    for (const auto& x : c.c)
        reduced.push_back(c.field.to_string(x));
    json out = {{"p", str(in.p)},
                {"field", c.field.is_extension() ? "F_p(sqrt " + str(c.field.radicand().value()) + ")" : "F_p"},
                {"coefficients", given},
                {"curve", rational},
                {"reduced", reduced},
                {"singular", c.singular},
                {"notices", c.notices},
                {"point", {{"x", to_string(point[0])}, {"y", to_string(point[1])}}},
                {"reduced_point",
                 {{"x", c.field.to_string(pp.point.x())}, {"y", c.field.to_string(pp.point.y())}}}};
    if (in.transform)
        out["transform"] = {{"u", str((*in.transform)[0])}, {"r", str((*in.transform)[1])},
                            {"w", str((*in.transform)[2])}};
    return out;
}

PreparedPoint prepare(const CurveInput& in, std::array<Rat, 4>& used, std::array<RatCoord, 2>& point)
{
    used = in.coeffs;
    point = {in.x, in.y};
    if (in.transform) {
        const auto& [u, r, w] = *in.transform;
        used = change_variables(in.coeffs, u, r, w);
        point = change_point(in.x, in.y, u, r, w);
    }
    return prepare_point(used, in.p, point[0], point[1], in.adjoin);
}

constexpr long kCountLimit = 1'000'000;

CommandResult cmd_curve_order(const Params& p)
{
    const CurveInput in = parse_curve(p);
    std::array<Rat, 4> used;
    std::array<RatCoord, 2> point;
    const PreparedPoint pp = prepare(in, used, point);
    json results = curve_json(in, pp, used, point);
    const long order = point_order(pp.curve, pp.point);
    results["order"] = order;
    if (pp.curve.field.order() <= kCountLimit) {
        const BigInt count = count_points(pp.curve, pp.curve.singular);
        results[pp.curve.singular ? "nonsingular_point_count" : "point_count"] = str(count);
        results["order_divides_point_count"] = count % order == 0;
    }
    return {results, std::nullopt};
}

CommandResult cmd_gap_vs_order(const Params& p)
{
    const SeqInput in = parse_sequence(p);
    const CurveInput cin = parse_curve(p);
    const int rmax = parse_rmax(p);
    const long r = p.integer("r");
    if (r < 1 || r > rmax)
        throw ConfigError("r", "field 'r': expected 1..rmax");
    const GapScan s = gap_scan(numeric_window(in, "gap-vs-order"), cin.p, rmax);
    const GapReport& rep = s.reports[static_cast<std::size_t>(r - 1)];
    std::array<Rat, 4> used;
    std::array<RatCoord, 2> point;
    const PreparedPoint pp = prepare(cin, used, point);
    const auto cmp = gap_vs_order(rep, pp.curve, pp.point);
    json results = {{"gap_report", gap_report_json(rep)},
                    {"curve", curve_json(cin, pp, used, point)},
                    {"gap", opt_json(cmp.gap)},
                    {"order", cmp.order},
                    {"equal", cmp.equal},
                    {"gap_divides_order", cmp.gap_divides_order},
                    {"order_divides_gap", cmp.order_divides_gap}};
    return {results, std::nullopt};
}

using Handler = CommandResult (*)(const Params&);

const std::map<std::string, Handler>& handlers()
{
    static const std::map<std::string, Handler> table = {
        {"seq", cmd_seq},
        {"invariants", cmd_invariants},
        {"symmetry", cmd_symmetry},
        {"period", cmd_period},
        {"transform", cmd_transform},
        {"eds", cmd_eds},
        {"companion", cmd_companion},
        {"gaps", cmd_gaps},
        {"robinson", cmd_robinson},
        {"polydiv", cmd_polydiv},
        {"laurent", cmd_laurent},
        {"closure", cmd_closure},
        {"conjecture", cmd_conjecture},
        {"cavachi", cmd_cavachi},
        {"curve-order", cmd_curve_order},
        {"gap-vs-order", cmd_gap_vs_order},
    };
    return table;
}

} // namespace

CommandResult run_command(const RunConfig& cfg)
{
    const auto it = handlers().find(cfg.subcommand);
    if (it == handlers().end())
        throw ConfigError("subcommand", "unknown subcommand '" + cfg.subcommand + "'");
    return it->second(Params(cfg));
}

} // namespace somos::cli
