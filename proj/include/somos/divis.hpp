#pragma once

// Divisibility analytics: valuations, prime-power gap scans, the closure
// oracle for sets closed under (s, t) -> 2s - t, polynomial divisibility,
// coprimality, and the reports built from them.

#include "somos/somos.hpp"

#include <functional>
#include <map>
#include <set>

namespace somos {

/// Largest e with p^e | x. Throws ZeroInput for x = 0.
long valuation(const BigInt& x, const BigInt& p);

/// v_p(num) - v_p(den). Throws ZeroInput for x = 0.
long valuation(const Rat& x, const BigInt& p);

enum class Verdict { holds, fails, inconclusive };
enum class Classification { regular_all_powers, constant_valuation, inconclusive };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(Classification c) noexcept;

/// Occurrences of p^r in one window.
struct GapReport {
    BigInt p;
    int r = 1;
    long lo = 0, hi = 0;
    std::vector<long> occurrences;  // indices n with v_p(t[n]) >= r (zero terms count)
    bool is_ap = false;             // >= 3 occurrences forming every in-window term of one progression
    std::optional<long> first;      // smallest positive occurrence
    std::optional<long> gap;        // common difference (recorded from 2 occurrences, unverified)
};

struct GapScan {
    BigInt p;
    long lo = 0, hi = 0;
    int r_max = 0;
    std::vector<GapReport> reports;          // r = 1..r_max
    std::map<long, long> valuation_profile;  // n -> v_p(t[n]) over occurrences of p
    std::vector<long> zero_terms;            // indices with t[n] = 0 (valuation infinite)
    Classification classification = Classification::inconclusive;
    std::optional<int> w;                    // smallest r with N_{s+1} = p N_s for all scanned s >= r
    long hasse_bound = 0;                    // p + 1 + ceil(2 sqrt p)
    Verdict equally_spaced = Verdict::inconclusive;    // gap of p is a complete progression
    Verdict gap_bounded = Verdict::inconclusive;       // N_1 <= hasse_bound
    Verdict square_gap = Verdict::inconclusive;        // p^2 occurs and N_2 = p N_1
    Verdict power_gaps = Verdict::inconclusive;        // N_{i+l} = p^l N_i above the smallest valuation i
};

GapScan gap_scan(const SeqWindow<Rat>& w, const BigInt& p, int r_max);
GapScan gap_scan(const SeqWindow<BigInt>& w, const BigInt& p, int r_max);

/// ceil(2 sqrt(p)) + p + 1.
long hasse_upper(const BigInt& p);

struct ClosureResult {
    std::vector<long> seed;
    long lo = 0, hi = 0;
    std::vector<long> closure;        // sorted
    bool is_ap = false;               // every in-bound element of one progression
    std::optional<long> difference;   // common difference when |closure| >= 2
};

/// Fixed point of the seed under (s, t) -> 2s - t, computed inside [lo, hi].
ClosureResult closure_oracle(const std::vector<long>& seed, long lo, long hi);

/// gcd of the pairwise differences of the seed (0 for fewer than 2 distinct elements).
long seed_difference_gcd(const std::vector<long>& seed);

struct PolyDivResult {
    int k = 4;
    long n = 0, l = 0, d = 0, target = 0;
    bool divides = false;
};

/// Exact division t[n + l d(n)] / t[n] with d(n) = 2n - k - 1 on a
/// unit-initial symbolic window.
PolyDivResult poly_div_check(const SeqWindow<SparsePoly>& unit_window, int k, long n, long l);

/// Same, computing the window with the given symbolic budget.
PolyDivResult poly_div_check(int k, long n, long l, const ExtendOptions& opt = {});

struct CoprimePair {
    long i, j;
    std::string gcd;  // decimal gcd (integer windows) or "1" / "?" (polynomial evidence)
};

struct CoprimeReport {
    bool proof = true;                   // integer gcds are proofs, polynomial checks are evidence
    long pairs_checked = 0;
    std::vector<CoprimePair> failures;
    bool ok() const noexcept { return failures.empty(); }
};

/// All pairs i < j with j - i <= span.
CoprimeReport coprime_check(const SeqWindow<BigInt>& w, long span);

/// Polynomial version: a pair passes when one side is a unit, or when neither
/// divides the other and the integer gcd of their values is 1 at some of
/// `samples` pseudo-random points (fixed seed).
CoprimeReport coprime_check(const SeqWindow<SparsePoly>& w, long span, int samples = 10,
                            std::uint64_t seed = 12345);

/// d(n) for an arithmetic divisibility sequence; nullopt means infinity.
using DifferenceFn = std::function<std::optional<long>(long)>;

struct ArithDivReport {
    long pairs_checked = 0;
    std::vector<std::pair<long, long>> violations;  // (n, m): d(n) | m - n but f_n does not divide f_m
    bool ok() const noexcept { return violations.empty(); }
};

ArithDivReport arith_div_check(const SeqWindow<BigInt>& f, const DifferenceFn& d);

struct ConjectureEntry {
    long m = 0;
    BigInt modulus;                     // q^(m+1)
    long predicted_l = 0;
    bool divides_at_predicted = false;
    std::vector<long> occurrences;      // every in-window index where q^(m+1) divides
    bool predicted_in_occurrences = false;
};

struct ConjectureReport {
    int k = 4;
    long n = 0;
    BigInt q;
    long d = 0;
    long scan_lo = 1, scan_hi = 0;
    std::vector<ConjectureEntry> entries;
    bool nested = true;                 // occurrences of q^(m+2) lie inside those of q^(m+1)
};

/// Unit-initial Somos-k with alpha = beta = 1. q = t[n], halved when (k+1) | n.
/// Throws InvalidArgument when q <= 1 and QTooLarge when a predicted index
/// exceeds index_budget.
ConjectureReport conjecture_check(int k, long n, int m_max, long scan_lo = 1, long scan_hi = 200,
                                  long index_budget = 2000);

struct CavachiRow {
    long n = 0, m = 0;
    BigInt fn;
    BigInt index;
    bool divides = false;  // f_n^(m+1) | f_index, or 2^(m+2) | f_(3 2^m) for exceptional rows
};

struct CavachiReport {
    std::vector<CavachiRow> general;
    std::vector<CavachiRow> exceptional;
    bool ok() const noexcept;
};

/// Fibonacci numbers f_1 = f_2 = 1. Throws BudgetExceeded past index_budget.
CavachiReport cavachi_check(long n_lo, long n_hi, long m_lo, long m_hi, long exceptional_m_max,
                            long index_budget = 10'000'000);

struct RobinsonReport {
    std::vector<GapScan> rows;
};

RobinsonReport robinson_report(const SeqWindow<Rat>& w, const std::vector<BigInt>& primes, int r_max);

/// Divisors of t[n] in an integer window compared with the progression
/// n + j (2n - k - 1). Returns the mismatching indices.
std::vector<long> progression_mismatches(const SeqWindow<BigInt>& w, int k, long n);

struct PatternMismatch {
    long n, m;
    bool predicted, observed;
};

struct PatternReport {
    long checked = 0;
    std::vector<PatternMismatch> mismatches;
    bool ok() const noexcept { return mismatches.empty() && checked > 0; }
};

/// Somos-4 with initials (1, g, g, 1) and beta = g^2, alpha symbolic. For
/// n_lo <= n <= n_hi (n > 4) and |m - n| <= 2d with d = 2n - 5, compares
/// exact divisibility t[n] | t[m] with: d | m - n, and additionally
/// (m - n)/d != 1 (mod 3) when n != 1 (mod 3).
PatternReport square_beta_pattern(long gamma, long n_lo, long n_hi);

} // namespace somos
