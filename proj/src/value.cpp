#include "sa/value.hpp"

namespace sa {

std::string to_string(const Value& v) {
    return v.is_int() ? std::to_string(v.as_int()) : v.as_symbol();
}

std::string to_string(const Tuple& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            out += ',';
        out += to_string(t[i]);
    }
    out += ')';
    return out;
}

} // namespace sa
