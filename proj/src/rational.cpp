#include "gdga/rational.hpp"

#include <cctype>

namespace gdga {

namespace {

bool is_integer_token(const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
}

}  // namespace

Q parse_rational(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (num.size() && num[0] == '+') num = num.substr(1);
    if (!is_integer_token(num) || !is_integer_token(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational \"" + s + "\"");
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw ParseError("zero denominator in rational \"" + s + "\"");
    Q q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace gdga
