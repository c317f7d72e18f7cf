#pragma once

#include "operadlab/rational.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace operadlab {

/// Univariate polynomial in t over Rat. Dense, index = degree; the zero
/// polynomial has no coefficients, otherwise the top coefficient is nonzero.
class TPoly {
public:
    TPoly() = default;
    TPoly(const Rat& c) : coeffs_{c} { normalize(); }
    TPoly(int c) : TPoly(Rat(c)) {}
    TPoly(std::initializer_list<Rat> coeffs) : coeffs_(coeffs) { normalize(); }
    explicit TPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    /// The polynomial t.
    static TPoly t() { return TPoly{Rat(0), Rat(1)}; }

    const std::vector<Rat>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rat coefficient(std::size_t deg) const { return deg < coeffs_.size() ? coeffs_[deg] : Rat(0); }
    Rat constant_term() const { return coefficient(0); }

    Rat eval(const Rat& at) const
    {
        Rat acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * at + *it;
        return acc;
    }

    TPoly& operator+=(const TPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        normalize();
        return *this;
    }
    TPoly& operator-=(const TPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        normalize();
        return *this;
    }
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }

    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator-(TPoly a)
    {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }
    friend TPoly operator*(const TPoly& a, const TPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return TPoly(std::move(out));
    }
    friend bool operator==(const TPoly& a, const TPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// e.g. "2t - 3", "-1/2 t^2 + t", "0".
    std::string to_string() const
    {
        if (is_zero()) return "0";
        std::string out;
        for (int d = degree(); d >= 0; --d) {
            const Rat& c = coeffs_[static_cast<std::size_t>(d)];
            if (sgn(c) == 0) continue;
            Rat mag = abs(c);
            if (out.empty())
                out += sgn(c) < 0 ? "-" : "";
            else
                out += sgn(c) < 0 ? " - " : " + ";
            if (d == 0 || mag != 1) out += mag.get_str();
            if (d >= 1) out += mag.get_den() != 1 ? " t" : "t";
            if (d >= 2) out += "^" + std::to_string(d);
        }
        return out;
    }

private:
    void normalize()
    {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    }

    std::vector<Rat> coeffs_;
};

inline bool is_zero(const TPoly& p) { return p.is_zero(); }

} // namespace operadlab
