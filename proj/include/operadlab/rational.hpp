#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace operadlab {

/// Exact rational scalar. gmpxx keeps results canonical (den > 0, reduced).
using Rat = mpq_class;
using BigInt = mpz_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

/// Parses "n", "-n" or "n/d". Throws std::invalid_argument on malformed
/// input or a zero denominator.
inline Rat parse_rat(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
        throw std::invalid_argument("malformed rational: " + std::string(text));
    BigInt n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    Rat r(n, d);
    r.canonicalize();
    return r;
}

/// Always "num/den", also for integers ("2/1").
inline std::string format_rat_fraction(const Rat& x)
{
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Short form: "2", "-1/2".
inline std::string format_rat(const Rat& x) { return x.get_str(); }

inline Rat factorial(unsigned n)
{
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

} // namespace operadlab
