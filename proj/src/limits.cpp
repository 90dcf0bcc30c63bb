#include "mvd/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "mvd/errors.hpp"

namespace mvd {

Limits Limits::parse(std::string_view spec, Limits base) {
    std::size_t pos = 0;
    while (pos < spec.size()) {
        auto end = spec.find(',', pos);
        if (end == std::string_view::npos) end = spec.size();
        auto item = spec.substr(pos, end - pos);
        pos = end + 1;
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string_view::npos) throw InvalidArgument("limit '" + std::string(item) + "' needs key=value");
        auto key = item.substr(0, eq);
        auto val = item.substr(eq + 1);
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc{} || p != val.data() + val.size())
            throw InvalidArgument("limit '" + std::string(key) + "' needs a nonnegative integer");
        if (key == "max-columns") base.max_columns = v;
        else if (key == "max-rows") base.max_rows = v;
        else if (key == "max-memo") base.max_memo = v;
        else if (key == "max-words") base.max_words = v;
        else if (key == "max-bb-nodes") base.max_bb_nodes = v;
        else if (key == "max-tuples") base.max_tuples = v;
        else throw InvalidArgument("unknown limit '" + std::string(key) + "'");
    }
    return base;
}

Limits Limits::parse(std::string_view spec) { return parse(spec, Limits{}); }

Limits Limits::from_env() {
    const char* env = std::getenv("MVD_LIMITS");
    if (!env) return {};
    return parse(env);
}

}  // namespace mvd
