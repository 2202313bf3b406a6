#include "linfty/scalar.hpp"

#include <cctype>

#include "linfty/errors.hpp"

namespace linfty {

std::string to_string(const Scalar& s) {
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) throw InputError("scalar must be written p/q");
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view digits = num;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (!all_digits(digits) || !all_digits(den)) throw InputError("scalar must be written p/q with integer p, q");
    mpz_class p{std::string(num)};
    mpz_class q{std::string(den)};
    if (q == 0) throw InputError("scalar has zero denominator");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw InputError("scalar is not in reduced form");
    return Scalar(p, q);
}

Scalar factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Scalar(f);
}

}  // namespace linfty
