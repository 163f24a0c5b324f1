#include "gmx/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gmx {

namespace {

void require_min_batch(int m) {
    if (m < 3)
        throw std::invalid_argument(
            "pairing needs a batch of at least 3 images (a batch of 2 admits "
            "only the forbidden mutual pair)");
}

PairingMatrix from_permutation(const std::vector<int>& target_of) {
    PairingMatrix p(static_cast<int>(target_of.size()));
    for (int i = 0; i < p.m; ++i) p.at(i, target_of[i]) = 1;
    return p;
}

// Uniform integer in [0, n) from raw 64-bit draws, by rejection. Hand-rolled
// so the same seed yields the same pairing on every platform.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

}  // namespace

std::vector<int> PairingMatrix::targets() const {
    std::vector<int> target_of(m, -1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (at(i, j) != 0) {
                if (target_of[i] != -1)
                    throw std::invalid_argument(
                        "pairing row selects more than one target");
                target_of[i] = j;
            }
        }
        if (target_of[i] == -1)
            throw std::invalid_argument("pairing row selects no target");
    }
    return target_of;
}

std::string PairingViolation::describe() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::row_sum:
            out << "row " << i << " does not select exactly one target";
            break;
        case Kind::column_sum:
            out << "column " << j << " is not selected exactly once";
            break;
        case Kind::symmetric_pair:
            out << "pairs (" << i << "," << j << ") and (" << j << "," << i
                << ") are both selected";
            break;
        case Kind::self_pair:
            out << "image " << i << " is paired with itself";
            break;
        case Kind::short_cycle:
            out << "cycle through " << i << " has length < 3";
            break;
        case Kind::not_binary:
            out << "entry (" << i << "," << j << ") is not 0 or 1";
            break;
    }
    return out.str();
}

DistanceMatrix distance_matrix(const std::vector<NormalizedSaliency>& maps,
                               int downsample) {
    const int m = static_cast<int>(maps.size());
    if (m < 2)
        throw std::invalid_argument("distance_matrix needs at least 2 maps");
    if (downsample < 1)
        throw std::invalid_argument("downsample factor must be >= 1");
    for (int i = 1; i < m; ++i) {
        if (!maps[i].same_shape(maps[0]))
            throw std::invalid_argument(
                "distance_matrix: map " + std::to_string(i) +
                " does not match the batch resolution");
    }

    std::vector<const std::vector<double>*> data(m);
    std::vector<SaliencyMap> reduced;
    if (downsample > 1) {
        const int rh = std::max(1, (maps[0].height + downsample - 1) / downsample);
        const int rw = std::max(1, (maps[0].width + downsample - 1) / downsample);
        reduced.reserve(m);
        for (int i = 0; i < m; ++i) reduced.push_back(resize_map(maps[i], rh, rw));
        for (int i = 0; i < m; ++i) data[i] = &reduced[i].values;
    } else {
        for (int i = 0; i < m; ++i) data[i] = &maps[i].values;
    }

    DistanceMatrix w(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const std::vector<double>& a = *data[i];
            const std::vector<double>& b = *data[j];
            double sum = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                const double d = a[k] - b[k];
                sum += d * d;
            }
            const double dist = std::sqrt(sum);
            w.at(i, j) = dist;
            w.at(j, i) = dist;
        }
    }
    return w;
}

PairingMatrix greedy_pairing(const DistanceMatrix& w) {
    const int m = w.m;
    require_min_batch(m);

    PairingMatrix p(m);
    // Each consumed source would have its column zeroed so it cannot be
    // targeted again; the unavailable set covers exactly those columns
    // (and, unlike zeroing, stays correct when rows tie at zero), so the
    // matrix itself is never written.
    std::vector<bool> unavailable(m, false);

    int src = 0, dst = 1;
    double best = -1.0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            if (w.at(i, j) > best) {
                best = w.at(i, j);
                src = i;
                dst = j;
            }
        }
    }
    const int first = src;
    p.at(src, dst) = 1;
    unavailable[first] = true;
    unavailable[dst] = true;

    for (int step = 0; step < m - 2; ++step) {
        src = dst;
        dst = -1;
        best = -1.0;
        for (int j = 0; j < m; ++j) {
            if (unavailable[j] || j == src) continue;
            if (w.at(src, j) > best) {
                best = w.at(src, j);
                dst = j;
            }
        }
        p.at(src, dst) = 1;
        unavailable[dst] = true;
    }

    p.at(dst, first) = 1;
    return p;
}

PairingMatrix exact_pairing(const DistanceMatrix& w, int max_m) {
    const int m = w.m;
    require_min_batch(m);
    if (m > max_m)
        throw std::invalid_argument("exact_pairing: batch size " +
                                    std::to_string(m) + " exceeds cap " +
                                    std::to_string(max_m));

    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);

    std::vector<int> best_perm;
    double best_obj = -1.0;
    do {
        bool feasible = true;
        for (int i = 0; i < m; ++i) {
            if (perm[i] == i || perm[perm[i]] == i) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        double obj = 0.0;
        for (int i = 0; i < m; ++i) obj += w.at(i, perm[i]);
        // Lexicographic enumeration order makes ">" keep the smallest
        // permutation among ties.
        if (obj > best_obj) {
            best_obj = obj;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return from_permutation(best_perm);
}

PairingMatrix random_pairing(int m, std::uint64_t seed) {
    require_min_batch(m);

    // Sattolo's shuffle: the resulting array, read as i -> target_of[i],
    // is a uniform draw from the single-M-cycle permutations.
    std::vector<int> target_of(m);
    std::iota(target_of.begin(), target_of.end(), 0);
    std::mt19937_64 rng(seed);
    for (int i = m - 1; i > 0; --i) {
        const int j = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(i)));
        std::swap(target_of[i], target_of[j]);
    }
    return from_permutation(target_of);
}

double objective(const DistanceMatrix& w, const PairingMatrix& p) {
    if (w.m != p.m)
        throw std::invalid_argument("objective: dimension mismatch");
    double sum = 0.0;
    for (int i = 0; i < w.m; ++i)
        for (int j = 0; j < w.m; ++j)
            if (p.at(i, j) != 0) sum += w.at(i, j);
    return sum;
}

ValidationReport validate_pairing(const PairingMatrix& p) {
    ValidationReport report;
    const int m = p.m;

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (p.at(i, j) > 1)
                report.violations.push_back(
                    {PairingViolation::Kind::not_binary, i, j});

    bool sums_ok = true;
    for (int i = 0; i < m; ++i) {
        int row = 0;
        for (int j = 0; j < m; ++j) row += p.at(i, j) != 0 ? 1 : 0;
        if (row != 1) {
            report.violations.push_back({PairingViolation::Kind::row_sum, i, -1});
            sums_ok = false;
        }
    }
    for (int j = 0; j < m; ++j) {
        int col = 0;
        for (int i = 0; i < m; ++i) col += p.at(i, j) != 0 ? 1 : 0;
        if (col != 1) {
            report.violations.push_back(
                {PairingViolation::Kind::column_sum, -1, j});
            sums_ok = false;
        }
    }
    for (int i = 0; i < m; ++i) {
        if (p.at(i, i) != 0)
            report.violations.push_back({PairingViolation::Kind::self_pair, i, i});
        for (int j = i + 1; j < m; ++j) {
            if (p.at(i, j) != 0 && p.at(j, i) != 0)
                report.violations.push_back(
                    {PairingViolation::Kind::symmetric_pair, i, j});
        }
    }

    // Cycle lengths are well defined only once the matrix is a permutation.
    if (sums_ok) {
        std::vector<int> target_of(m, -1);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (p.at(i, j) != 0) target_of[i] = j;

        std::vector<bool> seen(m, false);
        for (int start = 0; start < m; ++start) {
            if (seen[start]) continue;
            int len = 0;
            int v = start;
            do {
                seen[v] = true;
                v = target_of[v];
                ++len;
            } while (v != start && len <= m);
            if (len < 3)
                report.violations.push_back(
                    {PairingViolation::Kind::short_cycle, start, -1});
        }
    }
    return report;
}

void write_pairing_csv(const PairingMatrix& p,
                       const std::filesystem::path& path) {
    const std::vector<int> target_of = p.targets();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() +
                                 " for writing");
    out << "src,dst\n";
    for (int i = 0; i < p.m; ++i) out << i << "," << target_of[i] << "\n";
    if (!out) throw std::runtime_error("short write to " + path.string());
}

PairingMatrix read_pairing_csv(const std::filesystem::path& path, int m) {
    if (m < 1) throw std::invalid_argument("pairing size must be positive");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line) || line != "src,dst")
        throw std::runtime_error("missing src,dst header in " + path.string());

    PairingMatrix p(m);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed row in " + path.string());
        const int src = std::stoi(line.substr(0, comma));
        const int dst = std::stoi(line.substr(comma + 1));
        if (src < 0 || src >= m || dst < 0 || dst >= m)
            throw std::runtime_error("pair index out of range in " +
                                     path.string());
        p.at(src, dst) = 1;
    }
    return p;
}

void write_distance_csv(const DistanceMatrix& w,
                        const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() +
                                 " for writing");
    char buf[48];
    for (int i = 0; i < w.m; ++i) {
        for (int j = 0; j < w.m; ++j) {
            std::snprintf(buf, sizeof(buf), "%.9g", w.at(i, j));
            out << (j == 0 ? "" : ",") << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("short write to " + path.string());
}

}  // namespace gmx
