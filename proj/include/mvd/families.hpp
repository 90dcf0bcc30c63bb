#pragma once

// Table generators: the six-row example table, the layered graph G_k with its
// decision map and tables T_k / T_k*, weighted identity tables Q_n, threshold
// tables, and seeded random tables.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mvd/limits.hpp"
#include "mvd/measure.hpp"
#include "mvd/table.hpp"

namespace mvd {

// Pascal-shaped layered graph. Nodes are numbered 1..m layer by layer, left to right.
struct LayeredGraph {
    std::size_t k = 0;
    std::size_t m = 0;
    std::vector<std::size_t> layer;                          // [1..m], layer of node i (1-based)
    std::vector<std::pair<std::size_t, std::size_t>> children;  // [1..m], {0,0} on the last layer

    bool last_layer(std::size_t i) const { return layer[i] == k; }
};

LayeredGraph gen_gk(std::size_t k);

// Decision map nu_k on E_2^m. Throws InvalidArgument on a wrong tuple length.
DecisionSet nu_k(const LayeredGraph& g, std::span<const Value> t);

// Characteristic tuples of the root-to-last-layer paths, left branches first.
std::vector<Tuple> gk_paths(const LayeredGraph& g);

// A nondecreasing phi on the naturals with phi(0) = 0 and phi(n) >= n.
class PhiSpec {
public:
    static PhiSpec identity();
    static PhiSpec twice();
    static PhiSpec square();
    // values[n] = phi(n).
    static PhiSpec values(std::vector<Weight> values);
    // "identity", "double", "square" or a comma separated value list "0,1,3".
    static PhiSpec parse(std::string_view text);

    const std::string& name() const { return name_; }
    // Throws InvalidArgument past the end of an explicit list.
    Weight operator()(Weight n) const;
    // Checks phi(0) = 0, monotonicity and phi(n) >= n for n <= n_max.
    void validate(Weight n_max) const;

private:
    enum class Kind { identity, twice, square, list };
    PhiSpec(Kind kind, std::string name, std::vector<Weight> values = {})
        : kind_(kind), name_(std::move(name)), values_(std::move(values)) {}
    Kind kind_;
    std::string name_;
    std::vector<Weight> values_;
};

struct FamilyTable {
    std::string id;
    DecisionTable table;
    std::optional<WeightMap> weights;
};

DecisionTable gen_t0();
// Complete table over m(k) columns labeled by nu_k. Throws ResourceError past the limits.
DecisionTable gen_tk(std::size_t k, const Limits& limits = {});
DecisionTable gen_tkstar(std::size_t k);
// Identity-pattern table with weights; attributes are q<n>_<t>.
FamilyTable gen_qn(Weight n, const PhiSpec& phi);
// Columns f_i for i in thresholds (positive, distinct; any order). Rows hold the
// step patterns; decisions are {row index} unless nu is given.
DecisionTable gen_threshold(std::vector<std::uint64_t> thresholds,
                            const std::optional<DecisionMap>& nu = std::nullopt);

struct RandomSpec {
    std::uint64_t seed = 0;
    std::size_t columns = 3;
    std::size_t rows = 4;
    Value k = 2;
    Decision universe = 3;  // decisions drawn from {0..universe-1}
};

DecisionTable gen_random(const RandomSpec& spec);

enum class FamilyKind { t0, tk, tkstar, qn, threshold, random };

struct FamilySpec {
    FamilyKind kind = FamilyKind::t0;
    std::size_t k = 1;                      // tk, tkstar
    Weight n = 1;                           // qn
    PhiSpec phi = PhiSpec::identity();      // qn
    std::vector<std::uint64_t> thresholds;  // threshold
    RandomSpec random;                      // random
};

FamilyTable generate(const FamilySpec& spec, const Limits& limits = {});

// Number of distinct decision sets among the rows.
std::size_t r_param(const DecisionTable& t);

// 0 below min(D), else the largest element of D not above n. D must be nonempty.
Weight h_step(std::span<const Weight> d, Weight n);

}  // namespace mvd
