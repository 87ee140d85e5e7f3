#pragma once

#include "mfslab/frobenius.hpp"
#include "mfslab/series.hpp"

#include <map>

namespace mfslab {

// Affine-linear vector field in flat coordinates: E^i = sum_j a(i,j) x^j + c_i.
struct EulerField {
    QMat linear;
    std::vector<Rational> constant;

    SeriesElem component(const RingPtr& ring, const std::vector<std::string>& names, int i) const;
    SeriesElem apply(const RingPtr& ring, const std::vector<std::string>& names, const SeriesElem& f) const;
};

using CTensor = std::vector<std::vector<std::vector<SeriesElem>>>;

// Frobenius structure in flat coordinates: constant metric, t-dependent
// structure constants, affine-linear Euler field, charge D.
struct FrobStructureData {
    RingPtr ring;
    std::vector<std::string> names;
    CTensor C;
    QMat metric;
    EulerField euler;
    Rational D;
    std::vector<Rational> unit;

    int dim() const { return static_cast<int>(names.size()); }
};

// Mixed Frobenius structure in adapted flat coordinates: each coordinate
// carries a filtration level, the graded pairings are constant per level.
struct MFSData {
    RingPtr ring;
    std::vector<std::string> names;
    std::vector<int> level;  // ascending along the coordinate order
    CTensor C;
    std::map<int, QMat> eta;
    EulerField euler;
    Rational D;
    std::vector<Rational> unit;

    int dim() const { return static_cast<int>(names.size()); }
    std::vector<int> coords_at(int k) const;
    std::vector<int> level_list() const;  // distinct levels with coordinates, ascending
    int top_level() const { return level.empty() ? 0 : level.back(); }

    std::vector<SeriesElem> multiply(const std::vector<SeriesElem>& x, const std::vector<SeriesElem>& y) const;
};

Report frobenius_structure_check(const FrobStructureData& f);

Report mfs_check(const MFSData& m);

// The mixed structure induced by a constant nilpotent field n: filtration
// I_0 = (n), I_k = (n) + Ker(n^k o) with pairings <x~, y~ o n^{k-1}>, adapted
// flat coordinates chosen by the echelon-extension rule, reference charge
// D + 1. Validates that n o has a constant matrix, [E, n] = 0, and
// [E, n^k] = (k-1) n^k.
MFSData mfs_from_nilpotent(const FrobStructureData& f, const std::vector<Rational>& n);

// Frame vectors of the adapted coordinates of mfs_from_nilpotent, as columns
// in the input coordinates (for aligning external frames).
QMat nilpotent_adapted_frame(const FrobStructureData& f, const std::vector<Rational>& n,
                             std::vector<int>* levels_out = nullptr);

// Freeze all coordinates of level <= k to constants (default 0) and restrict
// the structure to the transversal slice; reference charge is unchanged.
MFSData transversal_slice(const MFSData& m, int k,
                          const std::map<std::string, Rational>& slice_values = {});

// Constant change of adapted frame: new_frame_j = sum_i M(i,j) old_frame_i.
// M must be level-compatible (no new coordinate mixes strictly higher old
// levels than its own).
MFSData change_mfs_frame(const MFSData& m, const QMat& M, const std::vector<std::string>& new_names,
                         const std::vector<int>& new_levels);

bool mfs_equal(const MFSData& a, const MFSData& b, std::string* why = nullptr);

}  // namespace mfslab
