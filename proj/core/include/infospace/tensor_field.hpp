#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "infospace/kinematics.hpp"
#include "infospace/lattice.hpp"

namespace infospace {

enum class Variance : std::uint8_t { contravariant, covariant };

/// Rank-m tensor sampled on a Lattice4: 4^m real components per site.
///
/// Storage is dense, site-major then index-major, with the index tuple read
/// as a big-endian base-4 number. Components are stored as sampled; index
/// variance is tracked per slot and sign flips happen only in raise_lower.
/// The default rank cap keeps a site at <= 256 components; callers that
/// genuinely need more pass an explicit cap.
class TensorField {
  public:
    static constexpr int default_rank_cap = 4;

    TensorField() = default;
    TensorField(Lattice4 lattice, int rank, std::vector<Variance> variance,
                int rank_cap = default_rank_cap);

    /// Rank-m field with every slot contravariant.
    static TensorField contravariant(const Lattice4& lattice, int rank,
                                     int rank_cap = default_rank_cap);
    /// Rank-0 convenience.
    static TensorField scalar(const Lattice4& lattice);

    int rank() const { return rank_; }
    std::size_t components_per_site() const { return ncomp_; }
    const Lattice4& lattice() const { return lattice_; }
    const std::vector<Variance>& variance() const { return variance_; }

    double& at(std::size_t site, std::size_t comp) { return data_[site * ncomp_ + comp]; }
    double at(std::size_t site, std::size_t comp) const { return data_[site * ncomp_ + comp]; }

    std::span<double> site_components(std::size_t site) {
        return {data_.data() + site * ncomp_, ncomp_};
    }
    std::span<const double> site_components(std::size_t site) const {
        return {data_.data() + site * ncomp_, ncomp_};
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    /// Big-endian base-4 flattening of an index tuple.
    static std::size_t comp_index(std::span<const int> idx);
    /// Inverse of comp_index for this field's rank.
    void comp_tuple(std::size_t comp, std::span<int> out) const;

    bool all_finite() const;

    /// Scalar-field accessors (rank 0).
    double& value(std::size_t site) { return data_[site]; }
    double value(std::size_t site) const { return data_[site]; }

  private:
    Lattice4 lattice_{};
    int rank_ = 0;
    std::size_t ncomp_ = 1;
    std::vector<Variance> variance_{};
    std::vector<double> data_{};
};

/// Flips the variance of one index slot, negating components where that
/// index is a space axis. Involution: applying twice restores the field.
TensorField raise_lower(const TensorField& field, int slot);

/// All slots lowered (or raised) in order.
TensorField lower_all(const TensorField& field);

/// Pointwise Einstein contraction of the listed (slot_a, slot_b) pairs;
/// paired slots must carry opposite variance and the fields must share one
/// lattice. Result rank = rank_a + rank_b - 2*pairs, free slots of `a`
/// first, then of `b`.
TensorField contract(const TensorField& a, const TensorField& b,
                     std::span<const std::pair<int, int>> pairing);

/// Transforms every site's components by one global Lorentz matrix,
/// T'^{a...} = L^a_b ... T^{b...}. Requires all slots contravariant.
TensorField lorentz_transform(const TensorField& field, const LorentzMap& map);

// --- pointwise field arithmetic (shared lattice, same shape) ---
TensorField add(const TensorField& a, const TensorField& b);
TensorField sub(const TensorField& a, const TensorField& b);
TensorField scale(const TensorField& a, double s);
/// Pointwise product of two scalar fields.
TensorField mul(const TensorField& a, const TensorField& b);
/// Every component of `a` scaled by the rank-0 field `s` at the same site.
TensorField mul_scalar(const TensorField& a, const TensorField& s);
/// Rank-0 field filled with one value.
TensorField constant_scalar(const Lattice4& lattice, double value);

}  // namespace infospace
