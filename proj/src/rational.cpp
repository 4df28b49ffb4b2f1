#include "defq/rational.hpp"

#include <ostream>

namespace defq {

Rational::Rational(long n, long d) {
    if (d == 0)
        throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero())
        throw std::invalid_argument("Rational: inverse of zero");
    Rational r(1);
    r /= *this;
    return r;
}

Rational Rational::parse(const std::string& s) {
    if (s.empty())
        throw ParseError("empty rational literal");
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    auto is_int = [](const std::string& t) {
        if (t.empty())
            return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                return false;
        return true;
    };
    if (!is_int(num) || !is_int(den))
        throw ParseError("bad rational literal '" + s + "'");
    const mpz_class n(num), d(den);
    if (d == 0)
        throw ParseError("zero denominator in '" + s + "'");
    mpq_class v(n, d);
    v.canonicalize();
    return Rational(v);
}

std::string Rational::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace defq
