#include "somos/poly.hpp"

#include "somos/error.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <unordered_map>
#include <utility>

namespace somos {

namespace {

bool term_greater(const Term& x, const Term& y)
{
    return x.mono > y.mono;
}

using DegreeVector = std::array<std::uint32_t, kNumVars>;

DegreeVector degrees_of(std::span<const Term> terms)
{
    DegreeVector d{};
    for (const auto& t : terms)
        for (std::size_t i = 0; i < kNumVars; ++i)
            d[i] = std::max(d[i], t.mono.exponent(static_cast<Var>(i)));
    return d;
}

std::uint32_t total_degree_of(std::span<const Term> terms)
{
    // Graded order: the leading term carries the maximal total degree.
    return terms.empty() ? 0 : terms.front().mono.degree();
}

// Mixed-radix addressing of the exponent box [0, dims_v) over the active
// variables. Offsets of a product are the sum of the factor offsets as long as
// both factors lie in a box whose dims bound the product.
struct Box {
    std::array<std::uint64_t, kNumVars> stride{};
    std::array<std::uint64_t, kNumVars> dim{};
    std::uint64_t volume = 1;

    // Returns false when the volume exceeds `limit`.
    bool init(const DegreeVector& maxdeg, std::uint64_t limit)
    {
        volume = 1;
        for (std::size_t i = kNumVars; i-- > 0;) {
            dim[i] = std::uint64_t(maxdeg[i]) + 1;
            stride[i] = volume;
            if (dim[i] > 1) {
                if (volume > limit / dim[i])
                    return false;
                volume *= dim[i];
            }
            else {
                stride[i] = 0;
            }
        }
        return volume <= limit;
    }

    std::uint64_t offset(const Monomial& m) const
    {
        std::uint64_t o = 0;
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (stride[i] != 0)
                o += std::uint64_t(m.exponent(static_cast<Var>(i))) * stride[i];
        return o;
    }

    Monomial monomial(std::uint64_t off) const
    {
        ExponentVector e{};
        for (std::size_t i = 0; i < kNumVars; ++i) {
            if (stride[i] == 0)
                continue;
            e[i] = static_cast<std::uint32_t>(off / stride[i]);
            off %= stride[i];
        }
        return Monomial::from_exponents(e);
    }
};

constexpr std::uint64_t kDenseLimit = std::uint64_t(1) << 21;

// Kronecker substitution: a polynomial over the box maps to the integer
// sum c * 2^(64 L offset), with L limbs per slot. The map is a ring
// homomorphism, and it is injective on polynomials inside the box whose
// coefficients are below 2^(64 L - 1) in absolute value.
constexpr std::uint64_t kKroneckerSlots = std::uint64_t(1) << 24;
constexpr std::uint64_t kKroneckerMinWork = 1 << 14;

std::size_t max_coeff_bits(std::span<const Term> terms)
{
    std::size_t b = 0;
    for (const auto& t : terms)
        b = std::max(b, mpz_sizeinbase(t.coeff.get_mpz_t(), 2));
    return b;
}

std::size_t bit_length(std::uint64_t x)
{
    std::size_t b = 0;
    while (x) {
        ++b;
        x >>= 1;
    }
    return b;
}

BigInt kronecker_pack(std::span<const Term> terms, const Box& box, std::size_t limbs)
{
    const std::size_t n = static_cast<std::size_t>(box.volume) * limbs;
    BigInt pos, neg;
    mp_limb_t* P = mpz_limbs_write(pos.get_mpz_t(), static_cast<mp_size_t>(n));
    mp_limb_t* N = mpz_limbs_write(neg.get_mpz_t(), static_cast<mp_size_t>(n));
    std::fill(P, P + n, mp_limb_t(0));
    std::fill(N, N + n, mp_limb_t(0));
    for (const auto& t : terms) {
        mpz_srcptr c = t.coeff.get_mpz_t();
        mp_limb_t* dst = (mpz_sgn(c) > 0 ? P : N) + box.offset(t.mono) * limbs;
        const std::size_t sz = mpz_size(c);
        const mp_limb_t* src = mpz_limbs_read(c);
        std::copy(src, src + sz, dst);
    }
    mpz_limbs_finish(pos.get_mpz_t(), static_cast<mp_size_t>(n));
    mpz_limbs_finish(neg.get_mpz_t(), static_cast<mp_size_t>(n));
    return pos - neg;
}

// Inverse of kronecker_pack using balanced digits. Returns nullopt when the
// value does not fit the box.
std::optional<std::vector<Term>> kronecker_unpack(const BigInt& value, const Box& box, std::size_t limbs)
{
    const bool negative = value < 0;
    BigInt mag = negative ? BigInt(-value) : value;
    const std::size_t have = mpz_size(mag.get_mpz_t());
    const mp_limb_t* src = mpz_limbs_read(mag.get_mpz_t());
    const std::size_t slots = (have + limbs - 1) / limbs;
    if (slots > box.volume + 1)
        return std::nullopt;

    const std::size_t bits = limbs * 64;
    BigInt half, full;
    mpz_setbit(half.get_mpz_t(), bits - 1);
    mpz_setbit(full.get_mpz_t(), bits);
    std::vector<Term> out;
    BigInt digit;
    bool carry = false;
    std::vector<mp_limb_t> chunk(limbs);
    for (std::size_t i = 0; i < slots || carry; ++i) {
        if (i >= box.volume)
            return std::nullopt;
        const std::size_t begin = i * limbs;
        std::size_t used = 0;
        for (std::size_t j = 0; j < limbs; ++j) {
            chunk[j] = begin + j < have ? src[begin + j] : 0;
            if (chunk[j] != 0)
                used = j + 1;
        }
        mpz_t view;
        mpz_roinit_n(view, chunk.data(), static_cast<mp_size_t>(used));
        digit = BigInt(view);
        if (carry)
            digit += 1;
        carry = false;
        if (digit >= half) {
            digit -= full;
            carry = true;
        }
        if (digit != 0)
            out.push_back(Term{box.monomial(i), negative ? BigInt(-digit) : digit});
    }
    std::sort(out.begin(), out.end(), term_greater);
    return out;
}

void check_product_fits(std::span<const Term> a, std::span<const Term> b)
{
    const auto da = degrees_of(a);
    const auto db = degrees_of(b);
    for (std::size_t i = 0; i < kNumVars; ++i)
        if (da[i] + db[i] > Monomial::kMaxExponent)
            throw MathError(ErrorKind::ExponentOverflow,
                            std::string("exponent of ") + std::string(var_name(static_cast<Var>(i))) +
                                " exceeds the monomial field width");
    if (total_degree_of(a) + total_degree_of(b) > Monomial::kMaxDegree)
        throw MathError(ErrorKind::ExponentOverflow, "total degree exceeds the monomial field width");
}

} // namespace

struct PolyKernel {
    static SparsePoly make(std::vector<Term> sorted)
    {
        SparsePoly p;
        p.terms_ = std::move(sorted);
        return p;
    }

    static std::vector<Term>& terms(SparsePoly& p) { return p.terms_; }

    template <bool Subtract>
    static SparsePoly merge(const SparsePoly& a, const SparsePoly& b)
    {
        std::vector<Term> out;
        out.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono > b.terms_[j].mono)) {
                out.push_back(a.terms_[i++]);
            }
            else if (i == a.terms_.size() || b.terms_[j].mono > a.terms_[i].mono) {
                out.push_back(b.terms_[j++]);
                if constexpr (Subtract)
                    out.back().coeff = -out.back().coeff;
            }
            else {
                BigInt c = Subtract ? BigInt(a.terms_[i].coeff - b.terms_[j].coeff)
                                    : BigInt(a.terms_[i].coeff + b.terms_[j].coeff);
                if (c != 0)
                    out.push_back(Term{a.terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return make(std::move(out));
    }

    static SparsePoly scale(const SparsePoly& a, const Monomial& m, const BigInt& c)
    {
        std::vector<Term> out;
        out.reserve(a.terms_.size());
        for (const auto& t : a.terms_)
            out.push_back(Term{t.mono.mul_unchecked(m), t.coeff * c});
        return make(std::move(out));
    }

    static SparsePoly multiply(const SparsePoly& x, const SparsePoly& y)
    {
        if (x.is_zero() || y.is_zero())
            return {};
        check_product_fits(x.terms_, y.terms_);
        const SparsePoly& a = x.size() <= y.size() ? x : y;
        const SparsePoly& b = x.size() <= y.size() ? y : x;
        if (a.size() == 1)
            return scale(b, a.terms_[0].mono, a.terms_[0].coeff);

        auto da = degrees_of(a.terms_);
        auto db = degrees_of(b.terms_);
        DegreeVector dp{};
        for (std::size_t i = 0; i < kNumVars; ++i)
            dp[i] = da[i] + db[i];

        const std::uint64_t work = std::uint64_t(a.size()) * b.size();
        Box box;
        if (work >= kKroneckerMinWork && box.init(dp, kKroneckerSlots) && box.volume <= work / 4)
            return multiply_kronecker(a, b, box);
        if (box.init(dp, kDenseLimit) && box.volume <= 8 * work + 4096)
            return multiply_dense(a, b, box);
        return multiply_sparse(a, b);
    }

    static SparsePoly multiply_kronecker(const SparsePoly& a, const SparsePoly& b, const Box& box)
    {
        const std::size_t bits = max_coeff_bits(a.terms_) + max_coeff_bits(b.terms_) +
                                 bit_length(std::min(a.size(), b.size())) + 1;
        const std::size_t limbs = bits / 64 + 1;
        const BigInt prod = kronecker_pack(a.terms_, box, limbs) * kronecker_pack(b.terms_, box, limbs);
        auto terms = kronecker_unpack(prod, box, limbs);
        if (!terms)
            throw MathError(ErrorKind::ExponentOverflow, "packed product does not fit its box");
        return make(std::move(*terms));
    }

    static SparsePoly multiply_dense(const SparsePoly& a, const SparsePoly& b, const Box& box)
    {
        std::vector<BigInt> acc(box.volume);
        std::vector<std::uint64_t> ob(b.size());
        for (std::size_t j = 0; j < b.size(); ++j)
            ob[j] = box.offset(b.terms_[j].mono);
        for (const auto& ta : a.terms_) {
            const std::uint64_t oa = box.offset(ta.mono);
            mpz_srcptr ca = ta.coeff.get_mpz_t();
            for (std::size_t j = 0; j < b.size(); ++j)
                mpz_addmul(acc[oa + ob[j]].get_mpz_t(), ca, b.terms_[j].coeff.get_mpz_t());
        }
        std::vector<Term> out;
        for (std::uint64_t o = 0; o < box.volume; ++o)
            if (acc[o] != 0)
                out.push_back(Term{box.monomial(o), std::move(acc[o])});
        std::sort(out.begin(), out.end(), term_greater);
        return make(std::move(out));
    }

    static SparsePoly multiply_sparse(const SparsePoly& a, const SparsePoly& b)
    {
        std::unordered_map<Monomial, BigInt, MonomialHash> acc;
        acc.reserve(a.size() * 4 + b.size() * 4);
        for (const auto& ta : a.terms_) {
            mpz_srcptr ca = ta.coeff.get_mpz_t();
            for (const auto& tb : b.terms_)
                mpz_addmul(acc[ta.mono.mul_unchecked(tb.mono)].get_mpz_t(), ca, tb.coeff.get_mpz_t());
        }
        std::vector<Term> out;
        out.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0)
                out.push_back(Term{m, std::move(c)});
        std::sort(out.begin(), out.end(), term_greater);
        return make(std::move(out));
    }

    // Leading-term reduction. The remainder is stored either densely over the
    // dividend's exponent box or in a hash map; in both cases a max-heap yields
    // the current leading monomial. A position, once processed, is never
    // touched again because later quotient terms are strictly smaller.
    static std::optional<SparsePoly> divide(const SparsePoly& num, const SparsePoly& den)
    {
        if (den.is_zero())
            throw MathError(ErrorKind::ZeroDivisor, "polynomial division by zero");
        if (num.is_zero())
            return SparsePoly{};

        const Term& lead_d = den.terms_.front();
        if (den.size() == 1) {
            std::vector<Term> out;
            out.reserve(num.size());
            for (const auto& t : num.terms_) {
                if (!lead_d.mono.divides(t.mono) ||
                    !mpz_divisible_p(t.coeff.get_mpz_t(), lead_d.coeff.get_mpz_t()))
                    return std::nullopt;
                BigInt q;
                mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), lead_d.coeff.get_mpz_t());
                out.push_back(Term{t.mono.div_unchecked(lead_d.mono), std::move(q)});
            }
            return make(std::move(out));
        }

        const auto dn = degrees_of(num.terms_);
        const auto dd = degrees_of(den.terms_);
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (dd[i] > dn[i])
                return std::nullopt;
        if (!lead_d.mono.divides(num.terms_.front().mono))
            return std::nullopt;

        Box box;
        const std::uint64_t work = std::uint64_t(num.size()) * den.size();
        if (work >= kKroneckerMinWork && box.init(dn, kKroneckerSlots) && box.volume <= work / 4) {
            if (auto q = divide_kronecker(num, den, dn, dd, box))
                return *q;
        }
        if (box.init(dn, kDenseLimit) && box.volume <= 64 * num.size() + 4096)
            return divide_dense(num, den, dn, dd, box);
        return divide_sparse(num, den, dn, dd);
    }

    // Exact division of the packed integers. Integer non-divisibility proves
    // polynomial non-divisibility. A packed quotient is accepted only when its
    // product with den provably fits the box; otherwise the caller falls back
    // to term reduction (signalled by an empty optional inside the optional).
    static std::optional<std::optional<SparsePoly>> divide_kronecker(const SparsePoly& num, const SparsePoly& den,
                                                                     const DegreeVector& dn, const DegreeVector& dd,
                                                                     const Box& box)
    {
        const std::size_t den_bits = max_coeff_bits(den.terms_);
        const std::size_t limbs = (std::max(max_coeff_bits(num.terms_), den_bits) + 64) / 64 + 1;
        const BigInt kn = kronecker_pack(num.terms_, box, limbs);
        const BigInt kd = kronecker_pack(den.terms_, box, limbs);
        // divexact followed by a multiplication check is cheaper than
        // mpz_divisible_p on operands of this size.
        BigInt kq;
        mpz_divexact(kq.get_mpz_t(), kn.get_mpz_t(), kd.get_mpz_t());
        if (kq * kd != kn)
            return std::optional<SparsePoly>{};
        auto terms = kronecker_unpack(kq, box, limbs);
        if (!terms)
            return std::nullopt;
        const auto dq = degrees_of(*terms);
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (dq[i] + dd[i] > dn[i])
                return std::nullopt;
        const std::size_t prod_bits = max_coeff_bits(*terms) + den_bits + bit_length(std::min(terms->size(), den.size())) + 1;
        if (prod_bits >= limbs * 64)
            return std::nullopt;
        return std::optional<SparsePoly>{make(std::move(*terms))};
    }

    // True when every product q * d_j stays inside the dividend's degree box.
    static bool fits(const Monomial& q, const DegreeVector& dn, const DegreeVector& dd)
    {
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (q.exponent(static_cast<Var>(i)) + dd[i] > dn[i])
                return false;
        return true;
    }

    static std::optional<SparsePoly> divide_dense(const SparsePoly& num, const SparsePoly& den,
                                                  const DegreeVector& dn, const DegreeVector& dd,
                                                  const Box& box)
    {
        std::vector<BigInt> rem(box.volume);
        std::vector<char> queued(box.volume, 0);
        using Entry = std::pair<Monomial::Key, std::uint64_t>;
        std::priority_queue<Entry> heap;
        for (const auto& t : num.terms_) {
            const auto o = box.offset(t.mono);
            rem[o] = t.coeff;
            queued[o] = 1;
            heap.emplace(t.mono.key(), o);
        }
        std::vector<std::uint64_t> od(den.size());
        for (std::size_t j = 0; j < den.size(); ++j)
            od[j] = box.offset(den.terms_[j].mono);

        const Term& lead_d = den.terms_.front();
        std::vector<Term> quot;
        BigInt qc;
        while (!heap.empty()) {
            const auto [key, o] = heap.top();
            heap.pop();
            BigInt& c = rem[o];
            if (c == 0)
                continue;
            const Monomial m = Monomial::from_key(key);
            if (!lead_d.mono.divides(m) || !mpz_divisible_p(c.get_mpz_t(), lead_d.coeff.get_mpz_t()))
                return std::nullopt;
            const Monomial qm = m.div_unchecked(lead_d.mono);
            if (!fits(qm, dn, dd))
                return std::nullopt;
            mpz_divexact(qc.get_mpz_t(), c.get_mpz_t(), lead_d.coeff.get_mpz_t());
            c = 0;
            const std::uint64_t oq = o - od[0];
            for (std::size_t j = 1; j < den.size(); ++j) {
                const std::uint64_t target = oq + od[j];
                mpz_submul(rem[target].get_mpz_t(), qc.get_mpz_t(), den.terms_[j].coeff.get_mpz_t());
                if (!queued[target]) {
                    queued[target] = 1;
                    heap.emplace(qm.key() + den.terms_[j].mono.key(), target);
                }
            }
            quot.push_back(Term{qm, qc});
        }
        return make(std::move(quot));
    }

    static std::optional<SparsePoly> divide_sparse(const SparsePoly& num, const SparsePoly& den,
                                                   const DegreeVector& dn, const DegreeVector& dd)
    {
        std::unordered_map<Monomial, BigInt, MonomialHash> rem;
        rem.reserve(num.size() * 2);
        std::priority_queue<Monomial::Key> heap;
        for (const auto& t : num.terms_) {
            rem.emplace(t.mono, t.coeff);
            heap.push(t.mono.key());
        }
        const Term& lead_d = den.terms_.front();
        std::vector<Term> quot;
        BigInt qc;
        while (!heap.empty()) {
            const Monomial m = Monomial::from_key(heap.top());
            heap.pop();
            auto it = rem.find(m);
            if (it->second == 0) {
                rem.erase(it);
                continue;
            }
            const BigInt& c = it->second;
            if (!lead_d.mono.divides(m) || !mpz_divisible_p(c.get_mpz_t(), lead_d.coeff.get_mpz_t()))
                return std::nullopt;
            const Monomial qm = m.div_unchecked(lead_d.mono);
            if (!fits(qm, dn, dd))
                return std::nullopt;
            mpz_divexact(qc.get_mpz_t(), c.get_mpz_t(), lead_d.coeff.get_mpz_t());
            rem.erase(it);
            for (std::size_t j = 1; j < den.size(); ++j) {
                const Monomial target = qm.mul_unchecked(den.terms_[j].mono);
                auto [slot, inserted] = rem.try_emplace(target);
                mpz_submul(slot->second.get_mpz_t(), qc.get_mpz_t(), den.terms_[j].coeff.get_mpz_t());
                if (inserted)
                    heap.push(target.key());
            }
            quot.push_back(Term{qm, qc});
        }
        return make(std::move(quot));
    }
};

SparsePoly::SparsePoly(long c)
{
    if (c != 0)
        terms_.push_back(Term{Monomial{}, BigInt(c)});
}

SparsePoly::SparsePoly(const BigInt& c)
{
    if (c != 0)
        terms_.push_back(Term{Monomial{}, c});
}

SparsePoly SparsePoly::variable(Var v)
{
    return monomial(Monomial::variable(v), 1);
}

SparsePoly SparsePoly::monomial(const Monomial& m, const BigInt& c)
{
    SparsePoly p;
    if (c != 0)
        p.terms_.push_back(Term{m, c});
    return p;
}

SparsePoly SparsePoly::from_terms(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(), term_greater);
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().mono == t.mono)
            out.back().coeff += t.coeff;
        else {
            if (!out.empty() && out.back().coeff == 0)
                out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coeff == 0)
        out.pop_back();
    return PolyKernel::make(std::move(out));
}

BigInt SparsePoly::constant_term() const
{
    if (!terms_.empty() && terms_.back().mono.is_one())
        return terms_.back().coeff;
    return 0;
}

std::uint32_t SparsePoly::degree() const noexcept
{
    return total_degree_of(terms_);
}

std::uint32_t SparsePoly::degree(Var v) const noexcept
{
    std::uint32_t d = 0;
    for (const auto& t : terms_)
        d = std::max(d, t.mono.exponent(v));
    return d;
}

Monomial SparsePoly::monomial_content() const
{
    if (terms_.empty())
        return {};
    ExponentVector e = terms_.front().mono.exponents();
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < kNumVars; ++i)
            e[i] = std::min(e[i], t.mono.exponent(static_cast<Var>(i)));
    return Monomial::from_exponents(e);
}

SparsePoly SparsePoly::div_monomial(const Monomial& m) const
{
    if (m.is_one())
        return *this;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!m.divides(t.mono))
            throw MathError(ErrorKind::NotDivisible, m.to_string() + " does not divide " + t.mono.to_string());
        out.push_back(Term{t.mono.div_unchecked(m), t.coeff});
    }
    return PolyKernel::make(std::move(out));
}

SparsePoly SparsePoly::mul_monomial(const Monomial& m) const
{
    if (m.is_one())
        return *this;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
        out.push_back(Term{t.mono * m, t.coeff});
    return PolyKernel::make(std::move(out));
}

SparsePoly SparsePoly::map_monomials(const std::function<Monomial(const Monomial&)>& f) const
{
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
        out.push_back(Term{f(t.mono), t.coeff});
    return from_terms(std::move(out));
}

SparsePoly SparsePoly::pow(unsigned e) const
{
    SparsePoly result(1);
    SparsePoly base = *this;
    while (e > 0) {
        if (e & 1u)
            result *= base;
        e >>= 1;
        if (e > 0)
            base *= base;
    }
    return result;
}

Rat SparsePoly::eval(const Assignment& at) const
{
    const auto deg = degrees_of(terms_);
    std::array<std::vector<Rat>, kNumVars> powers;
    for (std::size_t i = 0; i < kNumVars; ++i) {
        if (deg[i] == 0)
            continue;
        auto it = at.find(static_cast<Var>(i));
        if (it == at.end())
            throw MathError(ErrorKind::InvalidArgument,
                            std::string("no value assigned to ") + std::string(var_name(static_cast<Var>(i))));
        powers[i].reserve(deg[i] + 1);
        powers[i].push_back(Rat(1));
        for (std::uint32_t k = 1; k <= deg[i]; ++k)
            powers[i].push_back(powers[i].back() * it->second);
    }
    Rat sum = 0;
    for (const auto& t : terms_) {
        Rat v = t.coeff;
        for (std::size_t i = 0; i < kNumVars; ++i) {
            const auto e = t.mono.exponent(static_cast<Var>(i));
            if (e != 0)
                v *= powers[i][e];
        }
        sum += v;
    }
    return sum;
}

SparsePoly SparsePoly::substitute(Var v, const SparsePoly& value) const
{
    // Group terms by the exponent of v, then accumulate coefficient * value^k.
    std::map<std::uint32_t, std::vector<Term>> groups;
    const Monomial unit_v = Monomial::variable(v);
    for (const auto& t : terms_) {
        const auto e = t.mono.exponent(v);
        Monomial rest = t.mono;
        for (std::uint32_t k = 0; k < e; ++k)
            rest = rest.div_unchecked(unit_v);
        groups[e].push_back(Term{rest, t.coeff});
    }
    SparsePoly result;
    SparsePoly power(1);
    std::uint32_t at = 0;
    for (auto& [e, terms] : groups) {
        while (at < e) {
            power *= value;
            ++at;
        }
        result += from_terms(std::move(terms)) * power;
    }
    return result;
}

SparsePoly SparsePoly::operator-() const
{
    SparsePoly r = *this;
    for (auto& t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o)
{
    *this = PolyKernel::merge<false>(*this, o);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o)
{
    *this = PolyKernel::merge<true>(*this, o);
    return *this;
}

SparsePoly& SparsePoly::operator*=(const SparsePoly& o)
{
    *this = PolyKernel::multiply(*this, o);
    return *this;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b)
{
    return PolyKernel::merge<false>(a, b);
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b)
{
    return PolyKernel::merge<true>(a, b);
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b)
{
    return PolyKernel::multiply(a, b);
}

std::string SparsePoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& t : terms_) {
        const bool neg = t.coeff < 0;
        BigInt mag = neg ? BigInt(-t.coeff) : t.coeff;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? "-" : "+";
        if (t.mono.is_one())
            out += somos::to_string(mag);
        else if (mag == 1)
            out += t.mono.to_string();
        else
            out += somos::to_string(mag) + "*" + t.mono.to_string();
    }
    return out;
}

std::optional<SparsePoly> try_exact_div(const SparsePoly& num, const SparsePoly& den)
{
    return PolyKernel::divide(num, den);
}

SparsePoly exact_div(const SparsePoly& num, const SparsePoly& den)
{
    auto q = PolyKernel::divide(num, den);
    if (!q)
        throw MathError(ErrorKind::NotDivisible, "polynomial does not divide exactly (divisor has " +
                                                     std::to_string(den.size()) + " terms)");
    return std::move(*q);
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    SparsePoly parse()
    {
        SparsePoly p = expr();
        skip();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw MathError(ErrorKind::ParseError,
                        "polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    SparsePoly expr()
    {
        SparsePoly p = unary();
        for (;;) {
            if (accept('+'))
                p += unary();
            else if (accept('-'))
                p -= unary();
            else
                return p;
        }
    }

    SparsePoly unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return product();
    }

    SparsePoly product()
    {
        SparsePoly p = power();
        while (accept('*'))
            p *= power();
        return p;
    }

    SparsePoly power()
    {
        SparsePoly base = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            return base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
        }
        return base;
    }

    SparsePoly primary()
    {
        skip();
        if (pos_ >= text_.size())
            fail("unexpected end");
        if (accept('(')) {
            SparsePoly p = expr();
            if (!accept(')'))
                fail("expected ')'");
            return p;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return SparsePoly(BigInt(std::string(text_.substr(start, pos_ - start)), 10));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            auto name = text_.substr(start, pos_ - start);
            auto v = parse_var(name);
            if (!v)
                fail("unknown variable '" + std::string(name) + "'");
            return SparsePoly::variable(*v);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

SparsePoly parse_poly(std::string_view text)
{
    return PolyParser(text).parse();
}

} // namespace somos
