#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gmx/saliency.hpp"

namespace gmx {

/// M x M symmetric matrix of pairwise l2 distances, zero diagonal.
struct DistanceMatrix {
    int m = 0;
    std::vector<double> values;

    DistanceMatrix() = default;
    explicit DistanceMatrix(int size)
        : m(size), values(static_cast<std::size_t>(size) * size, 0.0) {}

    double& at(int i, int j) {
        return values[static_cast<std::size_t>(i) * m + j];
    }
    double at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * m + j];
    }
};

/// Binary M x M matrix selecting a mixing partner for every batch image.
/// A valid matrix is a permutation with no fixed points and no 2-cycles,
/// i.e. a cycle cover whose cycles all have length >= 3:
///   - each row sums to 1 (every image is a source exactly once)
///   - each column sums to 1 (every image is a target exactly once)
///   - entries (i,j) and (j,i) are never both set
///   - the diagonal is zero
struct PairingMatrix {
    int m = 0;
    std::vector<std::uint8_t> entries;

    PairingMatrix() = default;
    explicit PairingMatrix(int size)
        : m(size), entries(static_cast<std::size_t>(size) * size, 0) {}

    std::uint8_t& at(int i, int j) {
        return entries[static_cast<std::size_t>(i) * m + j];
    }
    std::uint8_t at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * m + j];
    }

    /// target_of[i] = j where at(i,j) == 1. Requires each row to have
    /// exactly one entry set.
    std::vector<int> targets() const;
};

struct PairingViolation {
    enum class Kind {
        row_sum,       // row i does not select exactly one target
        column_sum,    // column j is not selected exactly once
        symmetric_pair,  // both (i,j) and (j,i) are set
        self_pair,     // diagonal entry set
        short_cycle,   // cycle through i has length < 3
        not_binary,    // entry outside {0,1}
    };
    Kind kind;
    int i = -1;
    int j = -1;

    std::string describe() const;
};

struct ValidationReport {
    std::vector<PairingViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// w[i][j] = l2 distance between maps i and j over all pixels. downsample > 1
/// resamples maps to ceil(dim/downsample) before measuring; defaults off.
DistanceMatrix distance_matrix(const std::vector<NormalizedSaliency>& maps,
                               int downsample = 1);

/// Greedy single-cycle heuristic. Picks the globally heaviest edge, then
/// repeatedly extends from the last target to its heaviest unused neighbor,
/// and finally closes the cycle back to the first source. O(M^2).
/// Ties break to the smallest row index, then the smallest column index.
/// M must be at least 3: with two images the constraints are unsatisfiable,
/// since a mutual pair is forbidden.
PairingMatrix greedy_pairing(const DistanceMatrix& w);

/// Exhaustive optimum over all permutations without fixed points or
/// 2-cycles. Ties break to the lexicographically smallest permutation.
/// Intended as an oracle; M is capped (default 8, 8! = 40320 candidates).
PairingMatrix exact_pairing(const DistanceMatrix& w, int max_m = 8);

/// Uniformly random single M-cycle from a seeded deterministic generator.
PairingMatrix random_pairing(int m, std::uint64_t seed);

/// Sum of w[i][j] over selected pairs.
double objective(const DistanceMatrix& w, const PairingMatrix& p);

/// Checks all pairing constraints plus minimum cycle length; violations are
/// report entries, never exceptions.
ValidationReport validate_pairing(const PairingMatrix& p);

/// CSV with header "src,dst", one row per source index in ascending order.
void write_pairing_csv(const PairingMatrix& p,
                       const std::filesystem::path& path);
PairingMatrix read_pairing_csv(const std::filesystem::path& path, int m);

/// Dense CSV, 9 significant digits per entry.
void write_distance_csv(const DistanceMatrix& w,
                        const std::filesystem::path& path);

}  // namespace gmx
