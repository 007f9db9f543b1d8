#pragma once

// Subspaces of a block-decomposed ambient space U = (+)_{v in H} U_v, kept in
// reduced row-echelon form so that equal subspaces have equal
// representations.

#include <memory>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "polytile/bits.hpp"
#include "polytile/matrix.hpp"

namespace polytile {

class Ambient {
public:
  Ambient(std::vector<std::string> labels, std::vector<std::size_t> block_dims)
      : labels_(std::move(labels)), dims_(std::move(block_dims)) {
    if (labels_.size() != dims_.size()) throw InputError("one block dimension per label");
    if (labels_.size() > 32) throw LimitError("at most 32 blocks");
    std::unordered_set<std::string> seen;
    offsets_.reserve(dims_.size() + 1);
    offsets_.push_back(0);
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (dims_[i] == 0) throw InputError("block '" + labels_[i] + "' has dimension 0");
      if (!seen.insert(labels_[i]).second)
        throw InputError("duplicate block label '" + labels_[i] + "'");
      offsets_.push_back(offsets_.back() + dims_[i]);
    }
  }

  /// Blocks of equal dimension labelled "0", "1", ...
  static std::shared_ptr<const Ambient> uniform(std::size_t blocks, std::size_t dim) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < blocks; ++i) labels.push_back(std::to_string(i));
    return std::make_shared<const Ambient>(std::move(labels),
                                           std::vector<std::size_t>(blocks, dim));
  }

  [[nodiscard]] std::size_t blocks() const { return labels_.size(); }
  [[nodiscard]] std::size_t total_dim() const { return offsets_.back(); }
  [[nodiscard]] std::size_t block_dim(std::size_t b) const { return dims_[b]; }
  [[nodiscard]] std::size_t block_offset(std::size_t b) const { return offsets_[b]; }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] Mask all_blocks() const { return full_mask(blocks()); }

  [[nodiscard]] std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw InputError("unknown block label '" + label + "'");
  }

  [[nodiscard]] Mask mask_of_labels(const std::vector<std::string>& names) const {
    Mask m = 0;
    for (const auto& n : names) m |= bit(index_of(n));
    return m;
  }

  /// Block containing coordinate column c.
  [[nodiscard]] std::size_t block_of_column(std::size_t c) const {
    std::size_t b = 0;
    while (offsets_[b + 1] <= c) ++b;
    return b;
  }

  friend bool operator==(const Ambient& a, const Ambient& b) {
    return a.labels_ == b.labels_ && a.dims_ == b.dims_;
  }

private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

template <ExactField F>
class Subspace {
public:
  using Scalar = typename F::value_type;

  /// Row span of `rows`, canonicalised to RREF.
  static Subspace span(const F& field, AmbientPtr ambient, MatrixOf<F> rows) {
    if (!ambient) throw InputError("null ambient");
    if (rows.rows() > 0 && rows.cols() != ambient->total_dim())
      throw InputError("row length " + std::to_string(rows.cols()) +
                       " does not match ambient dimension " +
                       std::to_string(ambient->total_dim()));
    if (rows.rows() == 0) rows = MatrixOf<F>::with_cols(ambient->total_dim());
    rref_in_place(field, rows);
    return Subspace(field, std::move(ambient), std::move(rows));
  }

  static Subspace zero(const F& field, AmbientPtr ambient) {
    auto cols = ambient->total_dim();
    return Subspace(field, std::move(ambient), MatrixOf<F>::with_cols(cols));
  }

  [[nodiscard]] const F& field() const { return field_; }
  [[nodiscard]] const AmbientPtr& ambient() const { return ambient_; }
  [[nodiscard]] const MatrixOf<F>& basis() const { return basis_; }
  [[nodiscard]] std::size_t dim() const { return basis_.rows(); }

  /// Blocks on which some basis vector is nonzero.
  [[nodiscard]] Mask support() const {
    Mask m = 0;
    for (std::size_t r = 0; r < basis_.rows(); ++r)
      for (std::size_t c = 0; c < basis_.cols(); ++c)
        if (!field_.is_zero(basis_(r, c))) m |= bit(ambient_->block_of_column(c));
    return m;
  }

  [[nodiscard]] bool contains_vector(std::span<const Scalar> v) const {
    auto stacked = basis_;
    stacked.append_row(v);
    return rank(field_, std::move(stacked)) == dim();
  }

  [[nodiscard]] bool contains(const Subspace& other) const {
    require_same_ambient(other);
    auto stacked = vstack<F>(basis_, other.basis_);
    return rank(field_, std::move(stacked)) == dim();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return *a.ambient_ == *b.ambient_ && a.basis_ == b.basis_;
  }

  void require_same_ambient(const Subspace& other) const {
    if (!(*ambient_ == *other.ambient_)) throw InputError("subspaces live in different ambients");
  }

private:
  Subspace(F field, AmbientPtr ambient, MatrixOf<F> basis)
      : field_(std::move(field)), ambient_(std::move(ambient)), basis_(std::move(basis)) {}

  F field_;
  AmbientPtr ambient_;
  MatrixOf<F> basis_;
};

namespace detail {

inline void require_blocks(const Ambient& amb, Mask blocks) {
  if (blocks & ~amb.all_blocks()) throw InputError("block mask names unknown labels");
}

// Columns of the ambient belonging to the blocks in `blocks`.
inline std::vector<std::size_t> columns_of(const Ambient& amb, Mask blocks) {
  std::vector<std::size_t> cols;
  for (auto b : mask_elements(blocks))
    for (std::size_t k = 0; k < amb.block_dim(b); ++k) cols.push_back(amb.block_offset(b) + k);
  return cols;
}

template <ExactField F>
MatrixOf<F> select_columns(const F& field, const MatrixOf<F>& m,
                           const std::vector<std::size_t>& cols) {
  MatrixOf<F> out(m.rows(), cols.size(), field.zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = m(r, cols[j]);
  return out;
}

}  // namespace detail

/// Canonical RREF subspace spanned by the rows of `m`.
template <ExactField F>
Subspace<F> rref(const F& field, AmbientPtr ambient, MatrixOf<F> m) {
  return Subspace<F>::span(field, std::move(ambient), std::move(m));
}

/// W^I = W intersected with the coordinate subspace U_I.
template <ExactField F>
Subspace<F> coordinate_section(const Subspace<F>& w, Mask blocks) {
  const auto& amb = *w.ambient();
  const auto& field = w.field();
  detail::require_blocks(amb, blocks);
  if (w.dim() == 0 || blocks == 0) return Subspace<F>::zero(field, w.ambient());
  auto outside = detail::columns_of(amb, amb.all_blocks() & ~blocks);
  if (outside.empty()) return w;
  // Coefficient vectors c with c^T B vanishing on the outside columns.
  auto restricted = detail::select_columns(field, w.basis(), outside);
  auto coeffs = nullspace(field, transpose(field, restricted));
  auto rows = multiply(field, coeffs, w.basis());
  return Subspace<F>::span(field, w.ambient(), std::move(rows));
}

/// W_I = projection of W onto U_I, embedded back into U.
template <ExactField F>
Subspace<F> coordinate_image(const Subspace<F>& w, Mask blocks) {
  const auto& amb = *w.ambient();
  const auto& field = w.field();
  detail::require_blocks(amb, blocks);
  auto rows = w.basis();
  for (auto c : detail::columns_of(amb, amb.all_blocks() & ~blocks))
    for (std::size_t r = 0; r < rows.rows(); ++r) rows(r, c) = field.zero();
  return Subspace<F>::span(field, w.ambient(), std::move(rows));
}

/// dim W_I without materialising the subspace.
template <ExactField F>
std::size_t image_dim(const Subspace<F>& w, Mask blocks) {
  if (blocks == 0 || w.dim() == 0) return 0;
  auto cols = detail::columns_of(*w.ambient(), blocks);
  return rank(w.field(), detail::select_columns(w.field(), w.basis(), cols));
}

/// phi W, where phi in k^H scales block v by phi[v].
template <ExactField F>
Subspace<F> scale(const std::vector<typename F::value_type>& phi, const Subspace<F>& w) {
  const auto& amb = *w.ambient();
  if (phi.size() != amb.blocks()) throw InputError("scaling vector must have one entry per block");
  auto rows = w.basis();
  for (std::size_t b = 0; b < amb.blocks(); ++b)
    for (std::size_t k = 0; k < amb.block_dim(b); ++k)
      for (std::size_t r = 0; r < rows.rows(); ++r) {
        auto& x = rows(r, amb.block_offset(b) + k);
        x = x * phi[b];
      }
  return Subspace<F>::span(w.field(), w.ambient(), std::move(rows));
}

}  // namespace polytile
