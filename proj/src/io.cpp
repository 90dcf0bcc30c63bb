#include "mvd/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mvd/errors.hpp"

namespace mvd {

using nlohmann::json;

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw FormatError("line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line, std::uint64_t max) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) fail(line, "expected a nonnegative integer, got '" + std::string(tok) + "'");
    if (v > max) fail(line, "integer " + std::string(tok) + " exceeds " + std::to_string(max));
    return v;
}

WeightMap weights_from_list(const std::vector<std::string>& attrs, const std::vector<Weight>& ws) {
    WeightMap out;
    for (std::size_t i = 0; i < attrs.size(); ++i) out.emplace(attrs[i], ws[i]);
    return out;
}

TableFile parse_structured(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("structured table: ") + e.what());
    }
    try {
        const auto k = j.at("k").get<Value>();
        auto attrs = j.at("attrs").get<std::vector<std::string>>();
        TableFile out{DecisionTable(k, attrs), std::nullopt};
        if (j.contains("weights") && !j.at("weights").is_null()) {
            auto ws = j.at("weights").get<std::vector<Weight>>();
            if (ws.size() != attrs.size()) throw FormatError("structured table: weights must match attrs");
            for (auto w : ws)
                if (w == 0) throw FormatError("structured table: weights must be at least 1");
            out.weights = weights_from_list(attrs, ws);
        }
        if (j.contains("rows")) {
            for (const auto& r : j.at("rows")) {
                out.table.add_row(r.at("values").get<std::vector<Value>>(), r.at("decisions").get<std::vector<Decision>>());
            }
        }
        return out;
    } catch (const json::exception& e) {
        throw FormatError(std::string("structured table: ") + e.what());
    }
}

}  // namespace

TableFile parse_table_file(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return parse_structured(text);

    std::optional<Value> k;
    std::optional<std::vector<std::string>> attrs;
    std::optional<std::vector<Weight>> weights;
    std::optional<DecisionTable> table;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = split_ws(line);
        if (toks.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const auto key = toks[0];
        if (key == "k") {
            if (k) fail(line_no, "repeated 'k' line");
            if (toks.size() != 2) fail(line_no, "'k' takes one integer");
            auto v = parse_uint(toks[1], line_no, std::numeric_limits<Value>::max());
            if (v < 2) fail(line_no, "k must be at least 2");
            k = static_cast<Value>(v);
        } else if (key == "attrs") {
            if (attrs) fail(line_no, "repeated 'attrs' line");
            attrs.emplace();
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] == ":") fail(line_no, "':' is not a valid attribute name");
                for (const auto& prev : *attrs)
                    if (prev == toks[i]) fail(line_no, "duplicate attribute '" + std::string(toks[i]) + "'");
                attrs->emplace_back(toks[i]);
            }
        } else if (key == "weights") {
            if (!attrs) fail(line_no, "'weights' must follow 'attrs'");
            if (weights) fail(line_no, "repeated 'weights' line");
            if (toks.size() - 1 != attrs->size()) fail(line_no, "'weights' needs one value per attribute");
            weights.emplace();
            for (std::size_t i = 1; i < toks.size(); ++i) {
                auto w = parse_uint(toks[i], line_no, std::numeric_limits<Weight>::max());
                if (w == 0) fail(line_no, "weights must be at least 1");
                weights->push_back(w);
            }
        } else if (key == "row") {
            if (!k || !attrs) fail(line_no, "'row' before 'k' and 'attrs'");
            if (!table) table.emplace(*k, *attrs);
            std::size_t colon = 0;
            for (std::size_t i = 1; i < toks.size(); ++i)
                if (toks[i] == ":") {
                    colon = i;
                    break;
                }
            if (colon == 0) fail(line_no, "row needs ':' before its decisions");
            std::vector<Value> values;
            for (std::size_t i = 1; i < colon; ++i)
                values.push_back(static_cast<Value>(parse_uint(toks[i], line_no, std::numeric_limits<Value>::max())));
            std::vector<Decision> ds;
            for (std::size_t i = colon + 1; i < toks.size(); ++i)
                ds.push_back(static_cast<Decision>(parse_uint(toks[i], line_no, std::numeric_limits<Decision>::max())));
            if (ds.empty()) fail(line_no, "row " + std::to_string(table->rows()) + ": empty decision set");
            try {
                table->add_row(values, std::move(ds));
            } catch (const FormatError& e) {
                fail(line_no, e.what());
            }
        } else {
            fail(line_no, "unknown directive '" + std::string(key) + "'");
        }
        if (end == text.size()) break;
    }
    if (!k) throw FormatError("missing 'k' line");
    if (!attrs) throw FormatError("missing 'attrs' line");
    if (!table) table.emplace(*k, *attrs);
    TableFile out{std::move(*table), std::nullopt};
    if (weights) out.weights = weights_from_list(*attrs, *weights);
    return out;
}

DecisionTable parse_table(std::string_view text) { return parse_table_file(text).table; }

std::string serialize_table(const DecisionTable& t, const WeightMap* weights, FileFormat format) {
    std::vector<Weight> ws;
    if (weights) {
        for (const auto& a : t.attributes()) {
            auto it = weights->find(a);
            if (it == weights->end()) throw MeasureError("missing weight for attribute '" + a + "'");
            ws.push_back(it->second);
        }
    }
    if (format == FileFormat::structured) {
        json j;
        j["schema"] = 1;
        j["k"] = t.k();
        j["attrs"] = t.attributes();
        if (weights) j["weights"] = ws;
        json rows = json::array();
        for (std::size_t r = 0; r < t.rows(); ++r) {
            rows.push_back({{"values", std::vector<Value>(t.row(r).begin(), t.row(r).end())},
                            {"decisions", t.decisions(r)}});
        }
        j["rows"] = std::move(rows);
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "k " << t.k() << "\nattrs";
    for (const auto& a : t.attributes()) os << ' ' << a;
    os << '\n';
    if (weights) {
        os << "weights";
        for (auto w : ws) os << ' ' << w;
        os << '\n';
    }
    for (std::size_t r = 0; r < t.rows(); ++r) {
        os << "row";
        for (auto v : t.row(r)) os << ' ' << v;
        os << " :";
        for (auto d : t.decisions(r)) os << ' ' << d;
        os << '\n';
    }
    return os.str();
}

TableFile load_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_table_file(ss.str());
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void save_text(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << content;
}

WeightMap parse_weights(std::string_view text) {
    WeightMap out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != 2) fail(line_no, "expected 'name value'");
        auto w = parse_uint(toks[1], line_no, std::numeric_limits<Weight>::max());
        if (w == 0) fail(line_no, "weights must be at least 1");
        if (!out.emplace(std::string(toks[0]), w).second) fail(line_no, "repeated weight for '" + std::string(toks[0]) + "'");
    }
    return out;
}

}  // namespace mvd
