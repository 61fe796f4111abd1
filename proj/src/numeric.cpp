#include "sawtree/numeric.hpp"

#include <cctype>
#include <cmath>

namespace sawtree {

namespace {

BigInt parse_digits(std::string_view s) {
    if (s.empty()) throw InvalidInput("expected digits in rational literal");
    BigInt v(0);
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InvalidInput("bad digit in rational literal");
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw InvalidInput("empty rational literal");
    bool neg = false;
    if (text.front() == '-' || text.front() == '+') {
        neg = text.front() == '-';
        text.remove_prefix(1);
    }
    Rational out;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_digits(text.substr(0, slash));
        BigInt den = parse_digits(text.substr(slash + 1));
        if (den == 0) throw InvalidInput("zero denominator");
        out = Rational(num, den);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view ip = text.substr(0, dot), fp = text.substr(dot + 1);
        BigInt num = parse_digits(ip.empty() ? std::string_view("0") : ip);
        BigInt den(1);
        for (char c : fp) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw InvalidInput("bad digit in rational literal");
            num = num * 10 + (c - '0');
            den *= 10;
        }
        out = Rational(num, den);
    } else {
        out = Rational(parse_digits(text));
    }
    return neg ? Rational(-out) : out;
}

std::uint32_t isqrt_floor(std::uint64_t n) {
    std::uint32_t r = 0;
    while (static_cast<std::uint64_t>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

double log_big(const BigInt& v) {
    if (v <= 0) throw InvalidInput("log of a non-positive integer");
    const unsigned bits = boost::multiprecision::msb(v);  // floor(log2 v)
    if (bits <= 52) return std::log(v.convert_to<double>());
    const BigInt top = v >> (bits - 52);
    return std::log(top.convert_to<double>()) + (bits - 52) * std::log(2.0);
}

}  // namespace sawtree
