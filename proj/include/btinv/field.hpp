#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "btinv/op_counter.hpp"

namespace btinv {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct division_by_zero : std::domain_error {
    division_by_zero() : std::domain_error("division by zero field element") {}
};

bool is_prime_u32(std::uint64_t p);

/// Runtime choice of coefficient field: `gf:<p>`, `rational`, `approx:<tol>`.
struct FieldSpec {
    struct Prime {
        std::uint32_t p;
    };
    struct Rational {};
    struct Approx {
        double tol;
    };
    std::variant<Prime, Rational, Approx> v;
    std::string text; // canonical spec string

    static FieldSpec prime(std::uint32_t p) {
        if (p < 2 || !is_prime_u32(p))
            throw parse_error("gf modulus must be a prime in [2, 2^31): " + std::to_string(p));
        return {Prime{p}, "gf:" + std::to_string(p)};
    }
    static FieldSpec rational() { return {Rational{}, "rational"}; }
    static FieldSpec approx(double tol) {
        if (!(tol > 0))
            throw parse_error("approx tolerance must be > 0");
        return {Approx{tol}, "approx:" + std::to_string(tol)};
    }

    static FieldSpec parse(const std::string& s);
};

/// GF(p) with residues in [0, p). p < 2^31 so products fit in 64 bits.
class PrimeField {
public:
    using Elem = std::uint32_t;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p < 2 || !is_prime_u32(p))
            throw parse_error("modulus is not prime: " + std::to_string(p));
    }

    std::uint32_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }

    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<Elem>(r);
    }

    Elem add(Elem a, Elem b) const {
        tally_add();
        std::uint64_t s = std::uint64_t(a) + b;
        return s >= p_ ? Elem(s - p_) : Elem(s);
    }
    Elem sub(Elem a, Elem b) const {
        tally_add();
        return a >= b ? a - b : Elem(a + p_ - b);
    }
    Elem neg(Elem a) const {
        tally_add();
        return a == 0 ? 0 : p_ - a;
    }
    Elem mul(Elem a, Elem b) const {
        tally_mul();
        return Elem(std::uint64_t(a) * b % p_);
    }
    Elem invert(Elem a) const {
        tally_div();
        return invert_raw(a);
    }
    Elem div(Elem a, Elem b) const {
        tally_div();
        return Elem(std::uint64_t(a) * invert_raw(b) % p_);
    }
    /// Multiply by a cached inverse; tallied as one division to match the
    /// per-element cost convention of the recurrence.
    Elem mul_as_div(Elem a, Elem cached_inv) const {
        tally_div();
        return Elem(std::uint64_t(a) * cached_inv % p_);
    }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem parse(const std::string& tok) const {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw parse_error("bad GF(p) value: '" + tok + "'");
        }
        if (pos != tok.size())
            throw parse_error("bad GF(p) value: '" + tok + "'");
        return from_int(v);
    }
    std::string to_string(Elem a) const { return std::to_string(a); }

    void set_counter(OpCounter* c) const { ctr_ = c; }
    OpCounter* counter() const { return ctr_; }

    static constexpr bool is_exact = true;

private:
    Elem invert_raw(Elem a) const {
        if (a == 0) throw division_by_zero{};
        // extended Euclid on (a, p)
        std::int64_t t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        if (t < 0) t += p_;
        return static_cast<Elem>(t);
    }

    void tally_mul() const { if (ctr_) ctr_->tally_mul(); }
    void tally_div() const { if (ctr_) ctr_->tally_div(); }
    void tally_add() const { if (ctr_) ctr_->tally_add(); }

    std::uint32_t p_;
    mutable OpCounter* ctr_ = nullptr;
};

/// Exact rationals: reduced fraction, positive denominator, unbounded parts.
/// mpq_class keeps values canonical after arithmetic.
class RationalField {
public:
    using Elem = mpq_class;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }

    Elem add(const Elem& a, const Elem& b) const {
        tally_add();
        return a + b;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        tally_add();
        return a - b;
    }
    Elem neg(const Elem& a) const {
        tally_add();
        return -a;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        tally_mul();
        return a * b;
    }
    Elem invert(const Elem& a) const {
        tally_div();
        if (a == 0) throw division_by_zero{};
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const {
        tally_div();
        if (b == 0) throw division_by_zero{};
        return a / b;
    }
    Elem mul_as_div(const Elem& a, const Elem& cached_inv) const {
        tally_div();
        return a * cached_inv;
    }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem parse(const std::string& tok) const {
        mpq_class q;
        if (q.set_str(tok, 10) != 0)
            throw parse_error("bad rational value: '" + tok + "'");
        if (q.get_den() == 0)
            throw parse_error("zero denominator: '" + tok + "'");
        q.canonicalize();
        return q;
    }
    std::string to_string(const Elem& a) const { return a.get_str(); }

    void set_counter(OpCounter* c) const { ctr_ = c; }
    OpCounter* counter() const { return ctr_; }

    static constexpr bool is_exact = true;

private:
    void tally_mul() const { if (ctr_) ctr_->tally_mul(); }
    void tally_div() const { if (ctr_) ctr_->tally_div(); }
    void tally_add() const { if (ctr_) ctr_->tally_add(); }

    mutable OpCounter* ctr_ = nullptr;
};

/// Machine doubles with a zero tolerance. Best effort: a pivot within tol of
/// zero counts as zero, which can misclassify.
class ApproxField {
public:
    using Elem = double;

    explicit ApproxField(double tol) : tol_(tol) {
        if (!(tol > 0)) throw parse_error("approx tolerance must be > 0");
    }

    double tol() const { return tol_; }

    Elem zero() const { return 0.0; }
    Elem one() const { return 1.0; }
    Elem from_int(long long v) const { return static_cast<double>(v); }

    Elem add(Elem a, Elem b) const {
        tally_add();
        return a + b;
    }
    Elem sub(Elem a, Elem b) const {
        tally_add();
        return a - b;
    }
    Elem neg(Elem a) const {
        tally_add();
        return -a;
    }
    Elem mul(Elem a, Elem b) const {
        tally_mul();
        return a * b;
    }
    Elem invert(Elem a) const {
        tally_div();
        if (std::fabs(a) <= tol_) throw division_by_zero{};
        return 1.0 / a;
    }
    Elem div(Elem a, Elem b) const {
        tally_div();
        if (std::fabs(b) <= tol_) throw division_by_zero{};
        return a / b;
    }
    Elem mul_as_div(Elem a, Elem cached_inv) const {
        tally_div();
        return a * cached_inv;
    }

    bool is_zero(Elem a) const { return std::fabs(a) <= tol_; }
    bool eq(Elem a, Elem b) const { return is_zero(a - b); }

    Elem parse(const std::string& tok) const {
        // accept p/q spellings too, for stencil-file compatibility
        auto slash = tok.find('/');
        try {
            if (slash != std::string::npos) {
                double num = std::stod(tok.substr(0, slash));
                double den = std::stod(tok.substr(slash + 1));
                if (den == 0) throw parse_error("zero denominator: '" + tok + "'");
                return num / den;
            }
            std::size_t pos = 0;
            double v = std::stod(tok, &pos);
            if (pos != tok.size()) throw parse_error("bad numeric value: '" + tok + "'");
            return v;
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception&) {
            throw parse_error("bad numeric value: '" + tok + "'");
        }
    }
    std::string to_string(Elem a) const { return std::to_string(a); }

    void set_counter(OpCounter* c) const { ctr_ = c; }
    OpCounter* counter() const { return ctr_; }

    static constexpr bool is_exact = false;

private:
    void tally_mul() const { if (ctr_) ctr_->tally_mul(); }
    void tally_div() const { if (ctr_) ctr_->tally_div(); }
    void tally_add() const { if (ctr_) ctr_->tally_add(); }

    double tol_;
    mutable OpCounter* ctr_ = nullptr;
};

/// Instantiate fn with the concrete field named by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    if (auto* p = std::get_if<FieldSpec::Prime>(&spec.v))
        return fn(PrimeField(p->p));
    if (std::get_if<FieldSpec::Rational>(&spec.v))
        return fn(RationalField{});
    return fn(ApproxField(std::get<FieldSpec::Approx>(spec.v).tol));
}

} // namespace btinv
