#include "starpi/rational.hpp"

#include <cctype>
#include <ostream>

namespace starpi {

std::optional<Rational> Rational::parse(const std::string& text) {
    // -? digits ( '/' digits )?   with a nonzero denominator
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-') ++i;
    std::size_t num_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == num_begin) return std::nullopt;
    if (i < text.size()) {
        if (text[i] != '/') return std::nullopt;
        ++i;
        std::size_t den_begin = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == den_begin || i != text.size()) return std::nullopt;
        if (text.substr(den_begin).find_first_not_of('0') == std::string::npos)
            return std::nullopt;
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0) return std::nullopt;
    q.canonicalize();
    return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.q_.get_str();
}

Rational pow(const Rational& base, unsigned e) {
    Rational out(1);
    Rational b = base;
    while (e > 0) {
        if (e & 1u) out *= b;
        b *= b;
        e >>= 1u;
    }
    return out;
}

}  // namespace starpi
