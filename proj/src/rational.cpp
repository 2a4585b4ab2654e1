#include "rrg/rational.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace rrg {

BigInt binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt odd_double_factorial(long k) {
    if (k < 0) throw std::invalid_argument("odd_double_factorial: k < 0");
    BigInt r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(2 * k + 1));
    return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto bad = [&] { throw std::invalid_argument("parse_rational: cannot parse '" + text + "'"); };

    std::string::size_type slash = text.find('/');
    std::string::size_type dot = text.find('.');
    if (slash != std::string::npos && dot != std::string::npos) bad();

    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::string::size_type i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };

    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) bad();
        BigInt d(den);
        if (d == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
        return make_rational(BigInt(num), d);
    }
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
        if (whole.empty()) whole = "0";
        if (frac.empty() || !is_int(whole) || !is_int(frac) || frac[0] == '-' || frac[0] == '+') bad();
        BigInt scale = 1;
        for (std::string::size_type i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt num = BigInt(whole) * scale + BigInt(frac);
        if (neg) num = -num;
        return make_rational(num, scale);
    }
    if (!is_int(text)) bad();
    return Rational(BigInt(text));
}

std::string fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string decimal_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s(buf);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

}  // namespace rrg
