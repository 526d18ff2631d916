#pragma once

#include "somos/error.hpp"

#include <string>
#include <utility>

namespace somos {

/// a + b*sqrt(d) over a base ring B. The radicand d travels with every
/// element and must agree between operands. Equality is componentwise.
template <class B>
class QuadElem {
public:
    QuadElem(B a, B b, B d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

    /// Embeds a base element.
    static QuadElem base(B a, B zero, B d) { return QuadElem(std::move(a), std::move(zero), std::move(d)); }

    const B& a() const noexcept { return a_; }
    const B& b() const noexcept { return b_; }
    const B& radicand() const noexcept { return d_; }

    QuadElem conjugate() const { return QuadElem(a_, -b_, d_); }

    /// a^2 - d b^2.
    B norm() const { return a_ * a_ - d_ * (b_ * b_); }

    QuadElem operator-() const { return QuadElem(-a_, -b_, d_); }

    QuadElem& operator+=(const QuadElem& o)
    {
        check(o);
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    QuadElem& operator-=(const QuadElem& o)
    {
        check(o);
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    QuadElem& operator*=(const QuadElem& o)
    {
        check(o);
        B a = a_ * o.a_ + d_ * (b_ * o.b_);
        B b = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(a);
        b_ = std::move(b);
        return *this;
    }

    friend QuadElem operator+(QuadElem x, const QuadElem& y) { return x += y; }
    friend QuadElem operator-(QuadElem x, const QuadElem& y) { return x -= y; }
    friend QuadElem operator*(QuadElem x, const QuadElem& y) { return x *= y; }

    friend bool operator==(const QuadElem& x, const QuadElem& y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
    }

private:
    void check(const QuadElem& o) const
    {
        if (!(d_ == o.d_))
            throw MathError(ErrorKind::InvalidArgument, "quadratic elements with different radicands");
    }

    B a_;
    B b_;
    B d_;
};

} // namespace somos
