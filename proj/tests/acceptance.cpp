// Acceptance checks 1-15. Prints one PASS/FAIL line per criterion and exits
// non-zero when any fails. The first argument is the somos-cli binary used by
// the determinism check.

#include "oracle.hpp"

#include "somos/curves.hpp"
#include "somos/divis.hpp"
#include "somos/eds.hpp"
#include "somos/laurent.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace somos;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            pass = false;
            detail << (detail.tellp() > 0 ? "; " : "") << what;
        }
    }
};

using Criterion = std::function<void(Outcome&)>;

SomosSpec<SparsePoly> symbolic_unit(int k)
{
    return unit_spec<SparsePoly>(k, SparsePoly::variable(Var::alpha), SparsePoly::variable(Var::beta), SparsePoly(1));
}

SeqWindow<BigInt> unit4(long lo, long hi)
{
    return extend(unit_spec<BigInt>(4, 1, 1, BigInt(1)), lo, hi);
}

SeqWindow<Rat> rational4(long alpha, long beta, const std::vector<long>& init, long lo, long hi)
{
    SomosSpec<Rat> spec{4, Rat(alpha), Rat(beta), {}};
    for (long v : init)
        spec.initials.emplace_back(v);
    return extend(spec, lo, hi);
}

std::set<long> profile_values(const GapScan& s)
{
    std::set<long> out;
    for (const auto& [n, v] : s.valuation_profile)
        out.insert(v);
    return out;
}

long gap_of(const GapScan& s, int r)
{
    const auto& rep = s.reports[static_cast<std::size_t>(r - 1)];
    return rep.is_ap && rep.gap ? *rep.gap : -1;
}

RatCoord rational(const Rat& q)
{
    return RatCoord{q, 0, 0};
}

void sequences(Outcome& o)
{
    auto decimal = [](const SeqWindow<BigInt>& w) {
        std::vector<std::string> out;
        for (const auto& t : w.terms())
            out.push_back(to_string(t));
        return out;
    };
    const std::vector<std::string> s4{"1", "1", "1", "1", "2", "3", "7", "23", "59", "314", "1529", "8209"};
    const std::vector<std::string> s5{"1", "1", "1", "1", "1", "2", "3", "5", "11", "37", "83"};
    const auto w4 = decimal(unit4(1, 12));
    const auto w5 = decimal(extend(unit_spec<BigInt>(5, 1, 1, BigInt(1)), 1, 11));
    o.require(w4 == s4, "Somos-4 window differs");
    o.require(w5 == s5, "Somos-5 window differs");
    o.require(w4 == oracle()["somos4_unit_1_12"].get<std::vector<std::string>>(), "Somos-4 differs from oracle");
    o.require(w5 == oracle()["somos5_unit_1_11"].get<std::vector<std::string>>(), "Somos-5 differs from oracle");
}

void two_adic(Outcome& o)
{
    const auto w = unit4(-50, 200);
    const auto s = gap_scan(w, 2, 2);
    std::vector<long> fives;
    for (long n = -50; n <= 200; ++n)
        if (n % 5 == 0)
            fives.push_back(n);
    o.require(s.reports[0].occurrences == fives, "2-occurrences are not the multiples of 5");
    o.require(s.reports[1].occurrences.empty(), "some term is divisible by 4");
    const auto per = period_mod(w, 4, 4);
    o.require(per.period == 10, "mod-4 period is not 10");
    o.require(!per.contains_zero, "mod-4 residue 0 occurs");
    o.detail << (o.pass ? "gap 5, no square, period 10" : "");
}

void polynomial_divisibility(Outcome& o)
{
    ExtendOptions opt;
    opt.symbolic_max_index = 40;
    long checked = 0;
    for (int k : {4, 5}) {
        const long lo_n = k == 4 ? 5 : 6;
        const auto w = extend(symbolic_unit(k), k + 1 - 40, 40, opt);
        for (long n = lo_n; n <= 10; ++n)
            for (long l : {-2L, -1L, 1L, 2L}) {
                const auto r = poly_div_check(w, k, n, l);
                ++checked;
                o.require(r.divides, "k=" + std::to_string(k) + " n=" + std::to_string(n) + " l=" + std::to_string(l));
            }
    }
    if (o.pass)
        o.detail << checked << " exact divisions";
}

void symmetry_and_laurent(Outcome& o)
{
    for (int k : {4, 5}) {
        const auto w = extend(symbolic_unit(k), k + 1 - 20, 20);
        o.require(symmetry_check(k, w).ok(), "symmetry fails for k=" + std::to_string(k));

        SomosSpec<LaurentElem> spec{k, LaurentElem::variable(Var::alpha), LaurentElem::variable(Var::beta), {}};
        for (int i = 1; i <= k; ++i)
            spec.initials.push_back(LaurentElem::variable(initial_var(i)));
        const auto lw = extend_partial(spec, 1, 20);
        o.require(!lw.error && lw.window.hi() == 20, "Laurent window stops early for k=" + std::to_string(k));
    }
}

void invariant_checks(Outcome& o)
{
    const auto w4 = extend(symbolic_unit(4), 1, 8);
    const auto w5 = extend(symbolic_unit(5), 1, 9);
    o.require(invariants4(symbolic_unit(4), w4, 1).I == LaurentElem(parse_poly("(alpha+beta)^2+beta")), "I differs");
    o.require(invariants5(symbolic_unit(5), w5, 1).J == LaurentElem(parse_poly("(2*alpha+beta)*(alpha+1)")),
              "J differs");

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> pick(1, 50);
    for (int s = 0; s < 25; ++s) {
        const Rat a(pick(rng)), b(pick(rng));
        const auto spec4 = unit_spec<Rat>(4, a, b, Rat(1));
        const auto spec5 = unit_spec<Rat>(5, a, b, Rat(1));
        const auto n4 = extend(spec4, 1, 100);
        const auto n5 = extend(spec5, 1, 100);
        const Rat I = invariants4(spec4, n4, 1).I, J = invariants5(spec5, n5, 1).J;
        for (long at = 2; at + 4 <= 100; ++at) {
            o.require(invariants4(spec4, n4, at).I == I, "I varies");
            o.require(invariants5(spec5, n5, at).J == J, "J varies");
        }
        if (!o.pass)
            return;
    }
}

void companions(Outcome& o)
{
    ExtendOptions opt;
    opt.symbolic_max_index = 30;
    const auto pair4 = companion4<SparsePoly>(SparsePoly::variable(Var::alpha), SparsePoly::variable(Var::beta), -12,
                                              22, opt);
    const PairRange grid{1, 10, 1, 10};
    const auto r4 = verify_companion(pair4, grid);
    o.require(r4.ok() && r4.for1.skipped == 0 && r4.for2.skipped == 0, "Somos-4 symbolic identities");

    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> pick(1, 50);
    for (int s = 0; s < 50; ++s) {
        const auto pair5 = companion5<Rat>(Rat(pick(rng)), Rat(pick(rng)), -12, 24);
        const auto r5 = verify_companion(pair5, grid);
        o.require(r5.ok() && r5.for1.skipped == 0 && r5.for2.skipped == 0, "Somos-5 sample " + std::to_string(s));
    }
}

void eds_properties(Outcome& o)
{
    const auto a = eds_extend(EdsSpec<BigInt>::standard(1, 1, -1, 1), -30, 29);  // 60 terms
    bool anti = true;
    for (long n = 1; n <= 29; ++n)
        anti = anti && a[-n] == -a[n];
    o.require(anti, "antisymmetry");
    o.require(a[0] == 0, "a0 != 0");

    std::vector<long> bad_k;
    for (long k = 1; k <= 8; ++k) {
        std::vector<long> kz;
        for (long m = a.lo(); m <= a.hi(); ++m)
            if (m % k == 0)
                kz.push_back(m);
        if (divisor_set(a, k) != kz)
            bad_k.push_back(k);
    }
    if (!bad_k.empty()) {
        std::string ks;
        for (long k : bad_k)
            ks += (ks.empty() ? "" : ",") + std::to_string(k);
        o.require(false, "V_k != kZ for k in {" + ks + "}");
    }
    o.require(consecutive_gcd_failures(a.slice(1, a.hi())).empty(), "consecutive gcd");

    const PairRange grid{1, 30, 1, 30};
    const auto f1 = verify_family_for(a, grid), f2 = verify_family_fora2(a, grid);
    o.require(f1.ok() && f2.ok(), "identity families");
    o.detail << (o.detail.tellp() > 0 ? "; " : "") << "families checked " << f1.checked << "/" << f2.checked;
}

void closures(Outcome& o)
{
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> value(-100, 100);
    std::uniform_int_distribution<int> count(1, 5);
    for (int i = 0; i < 200; ++i) {
        std::vector<long> seed(static_cast<std::size_t>(count(rng)));
        for (auto& s : seed)
            s = value(rng);
        const auto r = closure_oracle(seed, -2000, 2000);
        if (r.closure.size() <= 1)
            continue;
        o.require(r.is_ap && r.difference == seed_difference_gcd(seed), "seed " + std::to_string(i));
    }
}

void alpha4_beta9_curve(Outcome& o)
{
    const auto w = rational4(4, 9, {1, 3, 3, 1}, -40, 300);
    o.require(profile_values(gap_scan(w, 3, 2)) == std::set<long>{1}, "3-valuations not all 1");
    const auto s5 = gap_scan(w, 5, 4);
    const std::vector<long> expected{7, 7, 7, 35};
    std::vector<long> got;
    for (int r = 1; r <= 4; ++r)
        got.push_back(gap_of(s5, r));
    o.require(got == expected, "5-gaps differ");
    const std::array<Rat, 4> c{Rat(4), Rat(0), parse_rat("-12428112196/19683"),
                               parse_rat("1385503884676628/14348907")};
    const auto pp = prepare_point(c, 5, rational(parse_rat("55750/243")), rational(2));
    const long order = point_order(pp.curve, pp.point);
    o.require(order == 7 && order == got[0], "point order " + std::to_string(order));
}

void alpha2_beta5_curve(Outcome& o)
{
    const auto s = gap_scan(rational4(2, 5, {1, 3, 2, 5}, -30, 200), 7, 3);
    o.require(profile_values(s) == std::set<long>{2}, "7-valuations not all 2");
    o.require(gap_of(s, 1) == 10, "gap of 7 is not 10");
    const std::array<Rat, 4> c{Rat(4), Rat(0), parse_rat("-48492460561/38880000"),
                               parse_rat("10678311547192441/1259712000000")};
    const auto pp = prepare_point(c, 7, rational(parse_rat("223081/21600")), parse_coord("sqrt:2"));
    const long order = point_order(pp.curve, pp.point);
    o.require(order == 10, "point order " + std::to_string(order));
}

void unit_gaps_vs_orders(Outcome& o)
{
    const auto w = unit4(-60, 200);
    const std::array<Rat, 4> c{Rat(4), Rat(0), Rat(-4), Rat(1)};
    for (long p : {3L, 7L, 11L}) {
        const long gap = gap_of(gap_scan(w, p, 1), 1);
        const Curve e = make_curve(c, p);
        const long order = point_order(e, make_point(e, e.field.one(), e.field.one()));
        o.detail << (p == 3 ? "" : ", ") << "p=" << p << ": gap " << gap << " order " << order;
        if (gap != order)
            o.pass = false;
    }
}

void fibonacci_battery(Outcome& o)
{
    const auto f = fibonacci_extension(-30, 30);
    const auto oracle_fib = oracle()["fib_0_40"].get<std::vector<std::string>>();
    for (long n = 0; n <= 30; ++n)
        o.require(to_string(f[n]) == oracle_fib[static_cast<std::size_t>(n)], "F_" + std::to_string(n));
    o.require(symmetry_check(4, f, SymmetryRule::fibonacci_sign).ok(), "sign symmetry");
    o.require(cavachi_check(4, 9, 1, 2, 6).ok(), "Cavachi");

    const std::array<Rat, 4> printed{Rat(4), Rat(0), Rat(-25, 12), Rat(-125, 216)};
    const Rat u(1, 4), r(-5, 12), w(1, 4);
    const auto xy = change_point(rational(Rat(7, 12)), parse_coord("sqrt:-1"), u, r, w);
    const auto pp = prepare_point(change_variables(printed, u, r, w), 3, xy[0], xy[1]);
    const long order = point_order(pp.curve, pp.point);
    const long gap = gap_of(gap_scan(f, 3, 1), 1);
    o.require(pp.curve.singular, "transformed curve is not singular mod 3");
    o.require(order == 4 && gap == 4, "order " + std::to_string(order) + " gap " + std::to_string(gap));
}

void equivalent_sequences(Outcome& o)
{
    for (TransformKind t :
         {TransformKind::mg, TransformKind::mgs, TransformKind::somos5_abcba, TransformKind::sign_twist})
        o.require(verify_transform(t, 12).ok(), std::string(to_string(t)));
    const auto pat = square_beta_pattern(3, 5, 9);
    o.require(pat.ok(), std::to_string(pat.mismatches.size()) + " pattern mismatches");
}

void conjecture_report(Outcome& o)
{
    const auto rep = conjecture_check(4, 6, 1, 1, 200);
    o.require(rep.entries.size() == 2, "entry count");
    if (!o.pass)
        return;
    const auto& e0 = rep.entries[0];
    const auto& e1 = rep.entries[1];
    o.require(e0.predicted_l == 34 && e1.predicted_l == 97, "predicted indices");
    o.require(e0.occurrences == oracle()["conjecture_3_occurrences"].get<std::vector<long>>(), "3-occurrences");
    o.require(e1.occurrences == oracle()["conjecture_9_occurrences"].get<std::vector<long>>(), "9-occurrences");
    o.require(rep.nested, "9-occurrences not inside 3-occurrences");
    o.require(e0.predicted_in_occurrences == e0.divides_at_predicted &&
                  e1.predicted_in_occurrences == e1.divides_at_predicted,
              "agreement flags inconsistent");
    o.detail << "agreement m=0: " << e0.divides_at_predicted << ", m=1: " << e1.divides_at_predicted;
}

std::string capture(const std::string& command)
{
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        return out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;)
        out.append(buf, n);
    pclose(pipe);
    return out;
}

void determinism(Outcome& o, const std::string& cli)
{
    if (cli.empty()) {
        o.require(false, "no somos-cli path given");
        return;
    }
    const std::vector<std::string> configs{
        "seq --k 4 --from -20 --to 120",
        "gaps --p 3 --rmax 3 --to 300",
        "eds",
        "curve-order --p 5 --c 4,0,-12428112196/19683,1385503884676628/14348907 --x 55750/243 --y 2",
        "robinson --format csv",
    };
    for (const auto& cfg : configs) {
        const std::string cmd = "'" + cli + "' " + cfg + " 2>&1";
        const std::string a = capture(cmd), b = capture(cmd);
        o.require(!a.empty() && a == b, cfg);
    }
}

} // namespace

int main(int argc, char** argv)
{
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, Criterion>> criteria{
        {"sequence generation", sequences},
        {"2-adic occurrences and mod-4 period", two_adic},
        {"polynomial divisibility along d(n)", polynomial_divisibility},
        {"symmetry and Laurent windows", symmetry_and_laurent},
        {"invariants I and J", invariant_checks},
        {"companion identities", companions},
        {"EDS (1,1,-1,1) properties", eds_properties},
        {"closure oracle", closures},
        {"alpha=4, beta=9 gaps and point order", alpha4_beta9_curve},
        {"alpha=2, beta=5 gaps and point order", alpha2_beta5_curve},
        {"unit Somos-4 gaps equal point orders", unit_gaps_vs_orders},
        {"Fibonacci battery", fibonacci_battery},
        {"equivalent sequences", equivalent_sequences},
        {"conjecture report", conjecture_report},
        {"determinism", [&cli](Outcome& o) { determinism(o, cli); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        }
        catch (const std::exception& e) {
            o.pass = false;
            o.detail << (o.detail.tellp() > 0 ? "; " : "") << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += o.pass ? 0 : 1;
        std::printf("criterion %2zu: %s  %s (%.2fs)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), secs, o.detail.tellp() > 0 ? "  " : "", o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
