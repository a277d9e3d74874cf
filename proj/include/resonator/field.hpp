#pragma once

// Scalar fields used throughout the library.  Every algorithm is written
// against a field *object* so that prime fields can carry their modulus at
// run time:
//
//     template <class F> auto f(const F& field, typename F::value_type x);
//
// Two models are provided: Rationals (GMP rationals) and PrimeField
// (word-sized modular arithmetic, p < 2^62).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace resonator {

class FieldError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Rationals {
    using value_type = mpq_class;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long x) const { return value_type(static_cast<long>(x)); }
    value_type from_mpz(const mpz_class& x) const { return value_type(x); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw FieldError("division by zero");
        return 1 / a;
    }
    value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
    bool is_zero(const value_type& a) const { return a == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    std::uint64_t characteristic() const { return 0; }
    std::string name() const { return "Q"; }
    std::string to_string(const value_type& a) const { return a.get_str(); }
    value_type parse(const std::string& s) const {
        value_type v;
        if (v.set_str(s, 10) != 0) throw FieldError("not a rational number: '" + s + "'");
        v.canonicalize();
        return v;
    }
    bool less(const value_type& a, const value_type& b) const { return a < b; }
};

class PrimeField {
  public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 2 || p >= (std::uint64_t{1} << 62))
            throw FieldError("prime modulus out of range: " + std::to_string(p));
        mpz_class z(std::to_string(p));
        if (mpz_probab_prime_p(z.get_mpz_t(), 30) == 0)
            throw FieldError(std::to_string(p) + " is not prime");
    }

    std::uint64_t modulus() const { return p_; }
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long x) const {
        long long r = x % static_cast<long long>(p_);
        return static_cast<value_type>(r < 0 ? r + static_cast<long long>(p_) : r);
    }
    value_type from_mpz(const mpz_class& x) const {
        mpz_class r;
        mpz_class m(std::to_string(p_));
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        return std::stoull(r.get_str());
    }
    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type inv(value_type a) const {
        if (a == 0) throw FieldError("division by zero");
        return pow(a, p_ - 2);
    }
    value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
    bool is_zero(value_type a) const { return a == 0; }
    bool equal(value_type a, value_type b) const { return a == b; }
    std::uint64_t characteristic() const { return p_; }
    std::string name() const { return "F" + std::to_string(p_); }
    std::string to_string(value_type a) const { return std::to_string(a); }
    value_type parse(const std::string& s) const {
        mpz_class z;
        if (z.set_str(s, 10) != 0) {
            // Allow a/b when b is invertible mod p.
            mpq_class q;
            if (q.set_str(s, 10) != 0) throw FieldError("not a field element: '" + s + "'");
            q.canonicalize();
            return div(from_mpz(q.get_num()), from_mpz(q.get_den()));
        }
        return from_mpz(z);
    }
    bool less(value_type a, value_type b) const { return a < b; }

    value_type pow(value_type a, std::uint64_t e) const {
        value_type r = 1;
        while (e != 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

  private:
    std::uint64_t p_;
};

inline bool operator==(const Rationals&, const Rationals&) { return true; }

/// Run-time description of a field: the rationals or F_p.
struct FieldSpec {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return {}; }
    static FieldSpec prime(std::uint64_t p) {
        PrimeField check(p);
        return {Kind::prime, p};
    }

    /// Accepts "Q", "QQ", "F5", "GF5", "GF(5)", "5".
    static FieldSpec parse(std::string s) {
        std::string t;
        for (char c : s)
            if (c != ' ' && c != '(' && c != ')') t += c;
        if (t == "Q" || t == "QQ" || t == "q") return rationals();
        if (t.rfind("GF", 0) == 0) t = t.substr(2);
        else if (t.rfind("F", 0) == 0 || t.rfind("f", 0) == 0) t = t.substr(1);
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw FieldError("unrecognized field '" + s + "'");
        return prime(std::stoull(t));
    }

    std::uint64_t characteristic() const { return kind == Kind::rationals ? 0 : p; }
    std::string to_string() const { return kind == Kind::rationals ? "Q" : "F" + std::to_string(p); }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Calls fn(field) with a concrete field object for the spec.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::rationals) return std::forward<Fn>(fn)(Rationals{});
    return std::forward<Fn>(fn)(PrimeField(spec.p));
}

template <class F>
FieldSpec spec_of(const F& field) {
    if constexpr (std::is_same_v<F, Rationals>) {
        return FieldSpec::rationals();
    } else {
        return FieldSpec::prime(field.modulus());
    }
}

/// True when the integer m is zero in the field.
template <class F>
bool divides_characteristic(const F& field, long long m) {
    return field.is_zero(field.from_int(m));
}

}  // namespace resonator
