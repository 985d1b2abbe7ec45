#include "kncr/integer.hpp"

#include <stdexcept>
#include <string>

namespace kncr {

Integer parse_integer(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
    if (pos == text.size()) throw std::invalid_argument("empty integer");
    for (std::size_t i = pos; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    Integer v(std::string(text.substr(pos)), 10);
    if (negative) v = -v;
    return v;
}

}  // namespace kncr
