#include "sqconf/rational.hpp"

#include <cctype>

#include "sqconf/errors.hpp"

namespace sqconf {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational ratio(const Integer& num, const Integer& den) {
    if (den == 0) throw InputError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::string body = s;
    bool neg = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        neg = body[0] == '-';
        body.erase(0, 1);
    }
    Rational q;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::string a = body.substr(0, slash), b = body.substr(slash + 1);
        if (!all_digits(a) || !all_digits(b)) throw InputError("bad rational literal '" + raw + "'");
        Integer den(b, 10);
        if (den == 0) throw InputError("zero denominator in '" + raw + "'");
        q = ratio(Integer(a, 10), den);
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string a = body.substr(0, dot), b = body.substr(dot + 1);
        if ((a.empty() && b.empty()) || (!a.empty() && !all_digits(a)) || (!b.empty() && !all_digits(b)))
            throw InputError("bad decimal literal '" + raw + "'");
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, b.size());
        q = ratio(Integer((a.empty() ? "0" : a) + b, 10), den);
    } else {
        if (!all_digits(body)) throw InputError("bad number '" + raw + "'");
        q = Rational(Integer(body, 10));
    }
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }
double to_double(const Rational& q) { return q.get_d(); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
int sign(const Rational& q) { return sgn(q); }

}  // namespace sqconf
