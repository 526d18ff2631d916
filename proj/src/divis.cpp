#include "somos/divis.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace somos {

long valuation(const BigInt& x, const BigInt& p)
{
    if (x == 0)
        throw MathError(ErrorKind::ZeroInput, "valuation of zero");
    if (p < 2)
        throw MathError(ErrorKind::InvalidArgument, "valuation base must be at least 2");
    BigInt rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rat& x, const BigInt& p)
{
    if (x == 0)
        throw MathError(ErrorKind::ZeroInput, "valuation of zero");
    return valuation(BigInt(x.get_num()), p) - valuation(BigInt(x.get_den()), p);
}

std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string_view to_string(Classification c) noexcept
{
    switch (c) {
    case Classification::regular_all_powers: return "regular_all_powers";
    case Classification::constant_valuation: return "constant_valuation";
    case Classification::inconclusive: return "inconclusive";
    }
    return "?";
}

long hasse_upper(const BigInt& p)
{
    BigInt four_p = 4 * p, s;
    mpz_sqrt(s.get_mpz_t(), four_p.get_mpz_t());
    if (s * s < four_p)
        s += 1;
    const BigInt bound = p + 1 + s;
    return bound.get_si();
}

namespace {

long gcd_of_differences(const std::vector<long>& sorted)
{
    long g = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        g = std::gcd(g, sorted[i] - sorted[i - 1]);
    return g;
}

long floor_mod(long a, long m)
{
    const long r = a % m;
    return r < 0 ? r + m : r;
}

// Number of indices in [lo, hi] congruent to c modulo g.
long count_in_class(long lo, long hi, long c, long g)
{
    const long first = lo + floor_mod(c - lo, g);
    return first > hi ? 0 : (hi - first) / g + 1;
}

// Fills the progression fields of a report from its sorted occurrences.
void classify_progression(GapReport& rep)
{
    const auto& occ = rep.occurrences;
    for (long n : occ)
        if (n > 0) {
            rep.first = n;
            break;
        }
    if (occ.size() < 2)
        return;
    const long g = gcd_of_differences(occ);
    const bool complete = static_cast<long>(occ.size()) == count_in_class(rep.lo, rep.hi, occ.front(), g);
    if (occ.size() == 2) {
        rep.gap = g;
        return;
    }
    rep.is_ap = complete;
    if (complete)
        rep.gap = g;
}

bool window_covers(const GapScan& s, long span)
{
    return s.hi - s.lo + 1 >= span;
}

} // namespace

GapScan gap_scan(const SeqWindow<Rat>& w, const BigInt& p, int r_max)
{
    if (p < 2 || !is_probable_prime(p))
        throw MathError(ErrorKind::InvalidArgument, "gap scan needs a prime, got " + to_string(p));
    if (r_max < 1)
        throw MathError(ErrorKind::InvalidArgument, "r_max must be at least 1");
    GapScan s;
    s.p = p;
    s.lo = w.lo();
    s.hi = w.hi();
    s.r_max = r_max;
    s.hasse_bound = hasse_upper(p);

    std::vector<std::optional<long>> val;  // nullopt = zero term
    val.reserve(w.size());
    for (long n = w.lo(); n <= w.hi(); ++n) {
        if (w[n] == 0) {
            s.zero_terms.push_back(n);
            val.emplace_back();
        }
        else {
            const long v = valuation(w[n], p);
            val.emplace_back(v);
            if (v >= 1)
                s.valuation_profile[n] = v;
        }
    }

    for (int r = 1; r <= r_max; ++r) {
        GapReport rep;
        rep.p = p;
        rep.r = r;
        rep.lo = w.lo();
        rep.hi = w.hi();
        for (long n = w.lo(); n <= w.hi(); ++n) {
            const auto& v = val[static_cast<std::size_t>(n - w.lo())];
            if (!v || *v >= r)
                rep.occurrences.push_back(n);
        }
        classify_progression(rep);
        s.reports.push_back(std::move(rep));
    }

    auto N = [&](int r) -> std::optional<long> {
        if (r < 1 || r > r_max)
            return std::nullopt;
        const auto& rep = s.reports[static_cast<std::size_t>(r - 1)];
        return rep.is_ap ? rep.gap : std::nullopt;
    };
    const BigInt& P = p;
    const long pl = p.get_si();

    // Classification.
    if (!s.valuation_profile.empty()) {
        const long v0 = s.valuation_profile.begin()->second;
        const bool constant =
            s.zero_terms.empty() &&
            std::all_of(s.valuation_profile.begin(), s.valuation_profile.end(),
                        [v0](const auto& kv) { return kv.second == v0; });
        if (constant) {
            s.classification = Classification::constant_valuation;
        }
        else {
            bool all_regular = true;
            for (const auto& rep : s.reports)
                if (!rep.occurrences.empty() && !rep.is_ap)
                    all_regular = false;
            s.classification = all_regular ? Classification::regular_all_powers : Classification::inconclusive;
        }
    }

    // w: smallest r such that N_{t+1} = p N_t for every scanned t >= r.
    for (int r = 1; r < r_max && !s.w; ++r) {
        bool ok = true;
        for (int t = r; t < r_max && ok; ++t) {
            const auto a = N(t), b = N(t + 1);
            ok = a && b && *b == pl * *a;
        }
        if (ok)
            s.w = r;
    }

    // Observations.
    const auto& r1 = s.reports.front();
    if (r1.occurrences.size() >= 3)
        s.equally_spaced = r1.is_ap ? Verdict::holds : Verdict::fails;

    if (const auto n1 = N(1))
        s.gap_bounded = *n1 <= s.hasse_bound ? Verdict::holds : Verdict::fails;

    if (const auto n1 = N(1); n1 && r_max >= 2) {
        const auto& r2 = s.reports[1];
        if (r2.occurrences.size() >= 3)
            s.square_gap = (r2.is_ap && *r2.gap == pl * *n1) ? Verdict::holds : Verdict::fails;
        else if (r2.occurrences.empty() && window_covers(s, 2 * pl * *n1))
            s.square_gap = Verdict::fails;
    }

    if (!s.valuation_profile.empty()) {
        long i = s.valuation_profile.begin()->second;
        for (const auto& kv : s.valuation_profile)
            i = std::min(i, kv.second);
        if (const auto ni = N(static_cast<int>(i))) {
            bool any = false, bad = false;
            BigInt scale = 1;
            for (long l = 1; i + l <= r_max; ++l) {
                scale *= P;
                const auto& rep = s.reports[static_cast<std::size_t>(i + l - 1)];
                if (rep.occurrences.size() >= 3) {
                    any = true;
                    if (!rep.is_ap || BigInt(*rep.gap) != scale * *ni)
                        bad = true;
                }
                else if (l == 1 && rep.occurrences.empty() && window_covers(s, 2 * pl * *ni)) {
                    any = true;
                    bad = true;
                }
            }
            if (any)
                s.power_gaps = bad ? Verdict::fails : Verdict::holds;
        }
    }
    return s;
}

GapScan gap_scan(const SeqWindow<BigInt>& w, const BigInt& p, int r_max)
{
    return gap_scan(w.map([](const BigInt& x) { return Rat(x); }), p, r_max);
}

long seed_difference_gcd(const std::vector<long>& seed)
{
    long g = 0;
    for (std::size_t i = 1; i < seed.size(); ++i)
        g = std::gcd(g, seed[i] - seed[0]);
    return g;
}

ClosureResult closure_oracle(const std::vector<long>& seed, long lo, long hi)
{
    if (seed.empty())
        throw MathError(ErrorKind::InvalidArgument, "closure seed is empty");
    if (lo > hi)
        throw MathError(ErrorKind::InvalidArgument, "closure bound is empty");
    ClosureResult r;
    r.seed = seed;
    r.lo = lo;
    r.hi = hi;
    std::vector<char> member(static_cast<std::size_t>(hi - lo + 1), 0);
    std::vector<long> members;
    auto add = [&](long x) {
        if (x < lo || x > hi)
            return;
        char& m = member[static_cast<std::size_t>(x - lo)];
        if (!m) {
            m = 1;
            members.push_back(x);
        }
    };
    for (long s : seed) {
        if (s < lo || s > hi)
            throw MathError(ErrorKind::InvalidArgument, "seed element " + std::to_string(s) + " outside bound");
        add(s);
    }
    // Each unordered pair is reflected both ways once, when its later member
    // is processed.
    for (std::size_t i = 0; i < members.size(); ++i) {
        const long x = members[i];
        for (std::size_t j = 0; j < i; ++j) {
            const long y = members[j];
            add(2 * x - y);
            add(2 * y - x);
        }
    }
    std::sort(members.begin(), members.end());
    r.closure = members;
    if (members.size() >= 2) {
        const long g = gcd_of_differences(members);
        r.difference = g;
        r.is_ap = static_cast<long>(members.size()) == count_in_class(lo, hi, members.front(), g);
    }
    return r;
}

PolyDivResult poly_div_check(const SeqWindow<SparsePoly>& w, int k, long n, long l)
{
    PolyDivResult r;
    r.k = k;
    r.n = n;
    r.l = l;
    r.d = 2 * n - k - 1;
    r.target = n + l * r.d;
    r.divides = try_exact_div(w[r.target], w[n]).has_value();
    return r;
}

PolyDivResult poly_div_check(int k, long n, long l, const ExtendOptions& opt)
{
    const long target = n + l * (2 * n - k - 1);
    const auto spec =
        unit_spec<SparsePoly>(k, SparsePoly::variable(Var::alpha), SparsePoly::variable(Var::beta), SparsePoly(1));
    const auto w = extend(spec, std::min({1L, n, target}), std::max({static_cast<long>(k), n, target}), opt);
    return poly_div_check(w, k, n, l);
}

CoprimeReport coprime_check(const SeqWindow<BigInt>& w, long span)
{
    CoprimeReport r;
    r.proof = true;
    for (long i = w.lo(); i <= w.hi(); ++i)
        for (long j = i + 1; j <= std::min(w.hi(), i + span); ++j) {
            ++r.pairs_checked;
            BigInt g;
            mpz_gcd(g.get_mpz_t(), w[i].get_mpz_t(), w[j].get_mpz_t());
            if (g != 1)
                r.failures.push_back({i, j, to_string(g)});
        }
    return r;
}

CoprimeReport coprime_check(const SeqWindow<SparsePoly>& w, long span, int samples, std::uint64_t seed)
{
    CoprimeReport r;
    r.proof = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-50, 50);
    std::vector<Assignment> points(static_cast<std::size_t>(samples));
    for (auto& pt : points)
        for (std::size_t v = 0; v < kNumVars; ++v)
            pt[static_cast<Var>(v)] = Rat(dist(rng));

    auto is_unit = [](const SparsePoly& p) { return p.is_constant() && (p == SparsePoly(1) || p == SparsePoly(-1)); };
    for (long i = w.lo(); i <= w.hi(); ++i)
        for (long j = i + 1; j <= std::min(w.hi(), i + span); ++j) {
            ++r.pairs_checked;
            const SparsePoly &a = w[i], &b = w[j];
            if (is_unit(a) || is_unit(b))
                continue;
            if (a.is_zero() || b.is_zero()) {
                r.failures.push_back({i, j, "0"});
                continue;
            }
            if (try_exact_div(a, b)) {
                r.failures.push_back({i, j, b.to_string()});
                continue;
            }
            if (try_exact_div(b, a)) {
                r.failures.push_back({i, j, a.to_string()});
                continue;
            }
            bool separated = false;
            for (const auto& pt : points) {
                BigInt g;
                const BigInt va = BigInt(a.eval(pt).get_num()), vb = BigInt(b.eval(pt).get_num());
                mpz_gcd(g.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
                if (g == 1) {
                    separated = true;
                    break;
                }
            }
            if (!separated)
                r.failures.push_back({i, j, "?"});
        }
    return r;
}

ArithDivReport arith_div_check(const SeqWindow<BigInt>& f, const DifferenceFn& d)
{
    ArithDivReport r;
    for (long n = f.lo(); n <= f.hi(); ++n) {
        const auto dn = d(n);
        if (!dn || *dn <= 0)
            continue;
        for (long m = f.lo(); m <= f.hi(); ++m) {
            if ((m - n) % *dn != 0)
                continue;
            ++r.pairs_checked;
            if (!mpz_divisible_p(f[m].get_mpz_t(), f[n].get_mpz_t()))
                r.violations.emplace_back(n, m);
        }
    }
    return r;
}

ConjectureReport conjecture_check(int k, long n, int m_max, long scan_lo, long scan_hi, long index_budget)
{
    if (k != 4 && k != 5)
        throw MathError(ErrorKind::InvalidArgument, "conjecture check supports k = 4 and 5");
    if (n <= k)
        throw MathError(ErrorKind::InvalidArgument, "conjecture check needs n > k");
    ConjectureReport r;
    r.k = k;
    r.n = n;
    r.d = 2 * n - k - 1;
    r.scan_lo = scan_lo;
    r.scan_hi = scan_hi;

    const auto spec = unit_spec<BigInt>(k, 1, 1, 1);
    const BigInt tn = extend(spec, 1, n)[n];
    r.q = tn;
    if (n % (k + 1) == 0) {
        if (!mpz_even_p(tn.get_mpz_t()))
            throw MathError(ErrorKind::InvalidArgument, "t[n] is odd although k+1 divides n");
        r.q = tn / 2;
    }
    if (r.q <= 1)
        throw MathError(ErrorKind::InvalidArgument, "q = " + to_string(r.q) + " must exceed 1");

    std::vector<BigInt> predicted;
    for (int m = 0; m <= m_max; ++m) {
        const BigInt qm = pow(r.q, static_cast<unsigned long>(m));
        if (m > 0 && mpz_even_p(r.q.get_mpz_t()))
            throw MathError(ErrorKind::InvalidArgument, "q even: (q^m - 1)/2 is not an integer");
        const BigInt l = n + ((qm - 1) / 2 + k * qm) * r.d;
        if (l > index_budget)
            throw MathError(ErrorKind::QTooLarge, "predicted index " + to_string(l) + " exceeds budget " +
                                                      std::to_string(index_budget));
        predicted.push_back(l);
    }
    long top = scan_hi;
    for (const auto& l : predicted)
        top = std::max(top, l.get_si());
    const auto w = extend(spec, std::min(scan_lo, 1L), std::max(top, static_cast<long>(k)));

    for (int m = 0; m <= m_max; ++m) {
        ConjectureEntry e;
        e.m = m;
        e.modulus = pow(r.q, static_cast<unsigned long>(m + 1));
        e.predicted_l = predicted[static_cast<std::size_t>(m)].get_si();
        e.divides_at_predicted = mpz_divisible_p(w[e.predicted_l].get_mpz_t(), e.modulus.get_mpz_t()) != 0;
        for (long i = scan_lo; i <= scan_hi; ++i)
            if (mpz_divisible_p(w[i].get_mpz_t(), e.modulus.get_mpz_t()))
                e.occurrences.push_back(i);
        e.predicted_in_occurrences =
            std::find(e.occurrences.begin(), e.occurrences.end(), e.predicted_l) != e.occurrences.end();
        r.entries.push_back(std::move(e));
    }
    for (std::size_t m = 1; m < r.entries.size(); ++m)
        r.nested = r.nested && std::includes(r.entries[m - 1].occurrences.begin(), r.entries[m - 1].occurrences.end(),
                                             r.entries[m].occurrences.begin(), r.entries[m].occurrences.end());
    return r;
}

bool CavachiReport::ok() const noexcept
{
    auto good = [](const CavachiRow& row) { return row.divides; };
    return std::all_of(general.begin(), general.end(), good) &&
           std::all_of(exceptional.begin(), exceptional.end(), good);
}

namespace {

BigInt fibonacci(const BigInt& index, long budget)
{
    if (index < 0 || index > budget)
        throw MathError(ErrorKind::BudgetExceeded, "Fibonacci index " + to_string(index) + " beyond budget");
    BigInt f;
    mpz_fib_ui(f.get_mpz_t(), index.get_ui());
    return f;
}

} // namespace

CavachiReport cavachi_check(long n_lo, long n_hi, long m_lo, long m_hi, long exceptional_m_max, long index_budget)
{
    CavachiReport r;
    for (long n = n_lo; n <= n_hi; ++n) {
        const BigInt fn = fibonacci(n, index_budget);
        for (long m = m_lo; m <= m_hi; ++m) {
            CavachiRow row;
            row.n = n;
            row.m = m;
            row.fn = fn;
            row.index = n * pow(fn, static_cast<unsigned long>(m));
            const BigInt f = fibonacci(row.index, index_budget);
            const BigInt power = pow(fn, static_cast<unsigned long>(m + 1));
            row.divides = mpz_divisible_p(f.get_mpz_t(), power.get_mpz_t()) != 0;
            r.general.push_back(std::move(row));
        }
    }
    for (long m = 1; m <= exceptional_m_max; ++m) {
        CavachiRow row;
        row.n = 3;
        row.m = m;
        row.fn = 2;
        row.index = 3 * pow(BigInt(2), static_cast<unsigned long>(m));
        const BigInt f = fibonacci(row.index, index_budget);
        const BigInt power = pow(BigInt(2), static_cast<unsigned long>(m + 2));
        row.divides = mpz_divisible_p(f.get_mpz_t(), power.get_mpz_t()) != 0;
        r.exceptional.push_back(std::move(row));
    }
    return r;
}

RobinsonReport robinson_report(const SeqWindow<Rat>& w, const std::vector<BigInt>& primes, int r_max)
{
    RobinsonReport r;
    for (const auto& p : primes)
        r.rows.push_back(gap_scan(w, p, r_max));
    return r;
}

std::vector<long> progression_mismatches(const SeqWindow<BigInt>& w, int k, long n)
{
    const long d = 2 * n - k - 1;
    std::vector<long> out;
    for (long m = w.lo(); m <= w.hi(); ++m) {
        const bool observed = mpz_divisible_p(w[m].get_mpz_t(), w[n].get_mpz_t()) != 0;
        const bool predicted = (m - n) % d == 0;
        if (observed != predicted)
            out.push_back(m);
    }
    return out;
}

PatternReport square_beta_pattern(long gamma, long n_lo, long n_hi)
{
    if (gamma == 0)
        throw MathError(ErrorKind::ZeroParameter, "gamma is zero");
    if (n_lo <= 4 || n_hi < n_lo)
        throw MathError(ErrorKind::InvalidArgument, "pattern needs 4 < n_lo <= n_hi");
    const long lo = std::min(1L, n_lo - 2 * (2 * n_lo - 5));
    const long lo_all = std::min(lo, n_hi - 2 * (2 * n_hi - 5));
    const long hi = n_hi + 2 * (2 * n_hi - 5);
    const SparsePoly g(gamma);
    SomosSpec<SparsePoly> spec{4, SparsePoly::variable(Var::alpha), g * g, {SparsePoly(1), g, g, SparsePoly(1)}};
    ExtendOptions opt;
    opt.symbolic_max_index = std::max(hi, 5 - lo_all);
    const auto w = extend(spec, lo_all, hi, opt);

    PatternReport r;
    for (long n = n_lo; n <= n_hi; ++n) {
        const long d = 2 * n - 5;
        for (long m = n - 2 * d; m <= n + 2 * d; ++m) {
            const long diff = m - n;
            bool predicted = diff % d == 0;
            if (predicted && n % 3 != 1)
                predicted = floor_mod(diff / d, 3) != 1;
            const bool observed = try_exact_div(w[m], w[n]).has_value();
            ++r.checked;
            if (predicted != observed)
                r.mismatches.push_back({n, m, predicted, observed});
        }
    }
    return r;
}

} // namespace somos
