#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "annealbench/decomposition.hpp"
#include "annealbench/generators.hpp"
#include "annealbench/matrix.hpp"
#include "annealbench/qap.hpp"
#include "annealbench/solvers.hpp"

namespace annealbench {

/// Rectangular layout; location index = column * rows + row. Columns 2a and
/// 2a+1 face aisle a. The I/O point sits at row 0 of the leftmost column.
struct Layout {
  std::size_t rows = 45;
  std::size_t columns = 2;
  double row_spacing = 1.0;
  double column_spacing = 3.0;

  std::size_t locations() const noexcept { return rows * columns; }
  std::size_t aisles() const noexcept { return columns / 2; }
  std::size_t column_of(std::size_t loc) const noexcept { return loc / rows; }
  std::size_t row_of(std::size_t loc) const noexcept { return loc % rows; }
  std::size_t aisle_of(std::size_t loc) const noexcept { return column_of(loc) / 2; }
  double io_distance(std::size_t loc) const noexcept;
  /// Cost of moving between consecutive aisles.
  double crossover() const noexcept { return 2.0 * column_spacing; }
  void validate() const;
};

/// items[i] = SKU of item i; location_of[i] = location of item i.
struct Assignment {
  std::vector<std::uint32_t> item_sku;
  Permutation location_of;
  void validate(std::size_t locations) const;
};

/// One item per SKU, item i carries SKU i.
std::vector<std::uint32_t> identity_inventory(std::size_t n);

std::vector<double> sku_popularity(const OrderSet& orders);
Matrix build_frequency_matrix(const OrderSet& orders, const std::vector<std::uint32_t>& item_sku);

enum class DistanceMode { exact, block };
struct DistanceOptions {
  DistanceMode mode = DistanceMode::exact;
  double delta = 1.0;
  double big_m = 8.0;
};
Matrix build_distance_matrix(const Layout& layout, const DistanceOptions& opt = {});
std::vector<std::uint32_t> column_map(const Layout& layout);

/// Route length of one order; required location per SKU is its nearest-to-I/O item.
double sshape_route_length(const std::vector<std::uint32_t>& order, const Assignment& a,
                           const Layout& layout);
double total_pick_distance(const OrderSet& orders, const Assignment& a, const Layout& layout);
std::vector<double> route_lengths(const OrderSet& orders, const Assignment& a,
                                  const Layout& layout);

/// Total pick distance as a permutation objective, with incremental swaps.
class PickDistanceObjective final : public PermutationObjective {
 public:
  PickDistanceObjective(const OrderSet& orders, std::vector<std::uint32_t> item_sku,
                        const Layout& layout);
  std::size_t size() const override { return item_sku_.size(); }
  double reset(std::span<const std::uint32_t> perm) override;
  double swap_delta(std::size_t i, std::size_t j) override;
  void commit_swap(std::size_t i, std::size_t j) override;

 private:
  double order_length(std::size_t o) const;
  const OrderSet* orders_;
  std::vector<std::uint32_t> item_sku_;
  Layout layout_;
  std::vector<std::vector<std::uint32_t>> sku_items_;
  std::vector<std::vector<std::uint32_t>> item_orders_;
  std::vector<double> lengths_;
  Permutation perm_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

Assignment policy_random(const std::vector<std::uint32_t>& item_sku, const Layout& layout,
                         std::uint64_t seed);
Assignment policy_coi(const std::vector<std::uint32_t>& item_sku,
                      const std::vector<double>& popularity, const Layout& layout);
Assignment policy_abc(const std::vector<std::uint32_t>& item_sku,
                      const std::vector<double>& popularity, const Layout& layout,
                      std::uint64_t seed, std::vector<double> class_shares = {0.2, 0.3, 0.5});
Assignment policy_oos(const OrderSet& orders, const std::vector<std::uint32_t>& item_sku,
                      const Layout& layout, const PermAnnealConfig& cfg);

struct QapPolicyOptions {
  std::size_t k = 0;  // 0: one subset per column
  DistanceOptions distance;
  DecomposeOptions decompose;
};
/// Flow carries SKU popularity on its diagonal so I/O distances enter the objective.
QapInstance warehouse_qap(const OrderSet& orders, const std::vector<std::uint32_t>& item_sku,
                          const Layout& layout, const DistanceOptions& dist = {});
Assignment policy_qap_decomp(const OrderSet& orders, const std::vector<std::uint32_t>& item_sku,
                             const Layout& layout, const QapPolicyOptions& opt,
                             std::uint64_t seed);

void write_assignment_csv(std::ostream& out, const Assignment& a);
Assignment read_assignment_csv(std::istream& in, const std::vector<std::uint32_t>& item_sku);

}  // namespace annealbench
