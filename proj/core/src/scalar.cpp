#include "cope/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace cope {

double FloatScalar::tol_ = 1e-9;

void QuadraticScalar::check_radicand(long d) {
    if (d <= 1) throw DomainError("radicand must be a positive square-free integer > 1");
    for (long p = 2; p * p <= d; ++p) {
        if (d % (p * p) == 0) throw DomainError("radicand " + std::to_string(d) + " is not square-free");
    }
}

Rational QuadraticScalar::approx(unsigned bits) const {
    if (bits == 0) throw DomainError("approx requires bits >= 1");
    if (b_ == 0) return a_;
    // bracket sqrt(d) between consecutive integers, then bisect
    Integer root;
    mpz_sqrt(root.get_mpz_t(), Integer(d_).get_mpz_t());
    Rational lo(root), hi(root + 1);
    // need |b| * width <= 2^-(bits+1) so the midpoint error is < 2^-bits
    Rational need(1);
    need >>= bits + 1;
    Rational babs = b_ < 0 ? Rational(-b_) : b_;
    Rational dval(d_);
    while ((hi - lo) * babs > need) {
        Rational mid = (lo + hi) / 2;
        if (mid * mid <= dval)
            lo = mid;
        else
            hi = mid;
    }
    Rational mid = (lo + hi) / 2;
    Rational result = a_ + b_ * mid;
    result.canonicalize();
    return result;
}

Rational QuadraticScalar::round_pow2(RoundDir dir) const {
    if (sign() <= 0) throw DomainError("round_pow2 requires a positive argument");
    auto cmp_pow = [this](long z) {
        // sign of x - 2^z
        Rational p(1);
        if (z >= 0)
            p <<= static_cast<unsigned long>(z);
        else
            p >>= static_cast<unsigned long>(-z);
        return (*this - QuadraticScalar(p)).sign();
    };
    long z = 0;
    if (cmp_pow(0) >= 0) {
        while (cmp_pow(z + 1) >= 0) ++z;
    } else {
        while (cmp_pow(z) < 0) --z;
    }
    // now 2^z <= x < 2^{z+1}
    long ze = z;
    if (dir == RoundDir::Up && cmp_pow(z) != 0) ze = z + 1;
    Rational p(1);
    if (ze >= 0)
        p <<= static_cast<unsigned long>(ze);
    else
        p >>= static_cast<unsigned long>(-ze);
    return p;
}

FloatScalar FloatScalar::round_pow2(RoundDir dir) const {
    if (sign() <= 0) throw DomainError("round_pow2 requires a positive argument");
    int e;
    double m = std::frexp(v_, &e); // v = m * 2^e, m in [0.5, 1)
    double down = std::ldexp(1.0, e - 1);
    if (dir == RoundDir::Down) return FloatScalar(down);
    return FloatScalar(m == 0.5 ? down : std::ldexp(1.0, e));
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

std::string QuadraticScalar::str() const {
    if (b_ == 0) return rational_str(a_);
    return "(" + rational_str(a_) + ")+(" + rational_str(b_) + ")*sqrt(" + std::to_string(d_) + ")";
}

std::string FloatScalar::str() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v_);
    return buf;
}

namespace {

std::string strip_ws(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

bool is_plain_rational(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') ++i;
    if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    ++i;
    if (i == s.size()) return false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return i == s.size();
}

Rational parse_rational(const std::string& s) {
    if (!is_plain_rational(s)) throw ParseError("expected INT or INT/INT, got '" + s + "'");
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw ParseError("bad rational '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

// splits "(R)+(R)*sqrt(D)"; returns false if the shape does not match
bool split_quadratic(const std::string& s, std::string& ra, std::string& rb, std::string& rd) {
    if (s.empty() || s[0] != '(') return false;
    std::size_t close1 = s.find(')');
    if (close1 == std::string::npos) return false;
    ra = s.substr(1, close1 - 1);
    std::size_t i = close1 + 1;
    if (i >= s.size() || s[i] != '+') return false;
    ++i;
    if (i >= s.size() || s[i] != '(') return false;
    std::size_t close2 = s.find(')', i);
    if (close2 == std::string::npos) return false;
    rb = s.substr(i + 1, close2 - i - 1);
    i = close2 + 1;
    const std::string tail = "*sqrt(";
    if (s.compare(i, tail.size(), tail) != 0) return false;
    i += tail.size();
    std::size_t close3 = s.find(')', i);
    if (close3 == std::string::npos || close3 + 1 != s.size()) return false;
    rd = s.substr(i, close3 - i);
    return true;
}

} // namespace

QuadraticScalar QuadraticScalar::parse(std::string_view text, long default_radicand) {
    std::string s = strip_ws(text);
    if (s.empty()) throw ParseError("empty scalar");
    if (is_plain_rational(s)) return QuadraticScalar(parse_rational(s));
    std::string ra, rb, rd;
    if (!split_quadratic(s, ra, rb, rd))
        throw ParseError("scalar '" + std::string(text) + "' does not match INT, INT/INT or (R)+(R)*sqrt(D)");
    long d = 0;
    auto [p, ec] = std::from_chars(rd.data(), rd.data() + rd.size(), d);
    if (ec != std::errc() || p != rd.data() + rd.size())
        throw ParseError("bad radicand '" + rd + "'");
    (void)default_radicand;
    return QuadraticScalar(parse_rational(ra), parse_rational(rb), d);
}

FloatScalar FloatScalar::parse(std::string_view text, long default_radicand) {
    std::string s = strip_ws(text);
    if (s.empty()) throw ParseError("empty scalar");
    if (is_plain_rational(s)) {
        Rational q = parse_rational(s);
        return FloatScalar(q.get_d());
    }
    std::string ra, rb, rd;
    if (split_quadratic(s, ra, rb, rd)) {
        long d = std::strtol(rd.c_str(), nullptr, 10);
        return FloatScalar(parse_rational(ra).get_d() +
                           parse_rational(rb).get_d() * std::sqrt(static_cast<double>(d)));
    }
    // plain decimal accepted in float mode
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw ParseError("scalar '" + std::string(text) + "' is not a number");
    (void)default_radicand;
    return FloatScalar(v);
}

} // namespace cope
