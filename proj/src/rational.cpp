#include "hnpoly/rational.hpp"

#include <ostream>

namespace hnpoly {

Rat Rat::parse(std::string_view text) {
    if (text.empty()) throw DomainError("ParseError", "empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rat(mpz_class(std::string(text)), mpz_class(1));
        }
        mpz_class num(std::string(text.substr(0, slash)));
        mpz_class den(std::string(text.substr(slash + 1)));
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        throw DomainError("ParseError", "bad rational literal '" + std::string(text) + "'");
    }
}

mpz_class Rat::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

mpz_class Rat::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

std::string Rat::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace hnpoly
