#pragma once

// MVD table files.
//
// Text form, line oriented, whitespace separated:
//
//   # comment
//   k 2
//   attrs f2 f4 f3
//   weights 1 1 1          (optional, one positive integer per attribute)
//   row 1 1 1 : 1
//   row 0 1 1 : 0 1 2
//
// The structured form is a JSON object with the same fields:
//   {"schema": 1, "k": 2, "attrs": [...], "weights": [...],
//    "rows": [{"values": [...], "decisions": [...]}, ...]}

#include <optional>
#include <string>
#include <string_view>

#include "mvd/measure.hpp"
#include "mvd/table.hpp"

namespace mvd {

enum class FileFormat { text, structured };

struct TableFile {
    DecisionTable table;
    // Present when the file carried a `weights` line.
    std::optional<WeightMap> weights;
};

// Detects the structured form by a leading '{'. Throws FormatError.
TableFile parse_table_file(std::string_view text);
DecisionTable parse_table(std::string_view text);

std::string serialize_table(const DecisionTable& t, const WeightMap* weights = nullptr,
                            FileFormat format = FileFormat::text);

TableFile load_table_file(const std::string& path);
void save_text(const std::string& path, std::string_view content);

// Sidecar weight files: one `name value` pair per line, '#' comments allowed.
WeightMap parse_weights(std::string_view text);

}  // namespace mvd
