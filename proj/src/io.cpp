#include "beliefrev/io.hpp"

#include <sstream>

namespace beliefrev::io {

Mask parse_set_text(const Frame& frame, const std::string& text) {
    std::string body = text;
    std::erase_if(body, [](char c) { return c == ' ' || c == '\t'; });
    if (body.size() >= 2 && body.front() == '{' && body.back() == '}') body = body.substr(1, body.size() - 2);
    Mask m = 0;
    if (body.empty()) return m;
    std::istringstream in(body);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name.empty()) throw InvalidInput("empty element name in set '" + text + "'");
        m |= Mask{1} << frame.index_of(name);
    }
    return m;
}

}  // namespace beliefrev::io
