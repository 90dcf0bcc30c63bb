#pragma once

#include <cstddef>
#include <string_view>

namespace mvd {

// Resource caps shared by every exact search. Exceeding one raises ResourceError.
struct Limits {
    std::size_t max_columns = 24;
    std::size_t max_rows = 4096;
    std::size_t max_memo = 5'000'000;      // memo entries / visited subtables per search
    std::size_t max_words = 200'000;       // coverage-distinct words for cover searches
    std::size_t max_bb_nodes = 1'000'000;  // branch-and-bound / enumeration nodes
    std::size_t max_tuples = 1u << 20;     // tuples enumerated over E_k^n

    // Parses "max-memo=100,max-rows=64"; unknown keys raise InvalidArgument.
    static Limits parse(std::string_view spec);
    static Limits parse(std::string_view spec, Limits base);
    // Defaults overridden by the MVD_LIMITS environment variable when set.
    static Limits from_env();
};

}  // namespace mvd
