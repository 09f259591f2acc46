#include "annealbench/warehouse.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "annealbench/errors.hpp"
#include "annealbench/io.hpp"
#include "annealbench/rng.hpp"

namespace annealbench {

double Layout::io_distance(std::size_t loc) const noexcept {
  return static_cast<double>(column_of(loc)) * column_spacing +
         static_cast<double>(row_of(loc)) * row_spacing;
}

void Layout::validate() const {
  if (rows < 1) throw ParameterError("layout needs at least one row");
  if (columns < 2 || columns % 2 != 0) throw ParameterError("layout needs an even number of columns");
  if (!(row_spacing > 0.0) || !(column_spacing > 0.0)) throw ParameterError("spacings must be positive");
}

void Assignment::validate(std::size_t locations) const {
  if (item_sku.size() != location_of.size()) throw DimensionError("assignment and inventory sizes differ");
  check_permutation(location_of, locations);
}

std::vector<std::uint32_t> identity_inventory(std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  return v;
}

std::vector<double> sku_popularity(const OrderSet& orders) {
  std::vector<double> pop(orders.n_skus, 0.0);
  for (const auto& o : orders.orders)
    for (auto s : o) {
      if (s >= orders.n_skus) throw InventoryError("order refers to unknown SKU " + std::to_string(s));
      pop[s] += 1.0;
    }
  return pop;
}

Matrix build_frequency_matrix(const OrderSet& orders, const std::vector<std::uint32_t>& item_sku) {
  const auto m = orders.n_skus;
  std::vector<double> co(m * m, 0.0);
  for (const auto& o : orders.orders)
    for (auto a : o)
      for (auto b : o)
        if (a != b) co[static_cast<std::size_t>(a) * m + b] += 1.0;
  const auto n = item_sku.size();
  Matrix f = Matrix::square(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (item_sku[i] >= m) throw InventoryError("item carries unknown SKU");
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && item_sku[i] != item_sku[j])
        f(i, j) = co[static_cast<std::size_t>(item_sku[i]) * m + item_sku[j]];
  }
  return f;
}

Matrix build_distance_matrix(const Layout& layout, const DistanceOptions& opt) {
  layout.validate();
  const auto n = layout.locations();
  const double rows = static_cast<double>(layout.rows);
  Matrix d = Matrix::square(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) {
        d(a, b) = layout.io_distance(a);
        continue;
      }
      const auto ca = layout.column_of(a), cb = layout.column_of(b);
      const double ra = static_cast<double>(layout.row_of(a)), rb = static_cast<double>(layout.row_of(b));
      if (opt.mode == DistanceMode::block) {
        d(a, b) = ca == cb ? opt.delta : opt.big_m;
      } else if (ca == cb) {
        d(a, b) = layout.row_spacing * std::abs(ra - rb);
      } else {
        const double dc = static_cast<double>(ca > cb ? ca - cb : cb - ca);
        d(a, b) = layout.column_spacing * dc +
                  layout.row_spacing * std::min(ra + rb + 2.0, 2.0 * rows - ra - rb);
      }
    }
  return d;
}

std::vector<std::uint32_t> column_map(const Layout& layout) {
  std::vector<std::uint32_t> c(layout.locations());
  for (std::size_t l = 0; l < c.size(); ++l) c[l] = static_cast<std::uint32_t>(layout.column_of(l));
  return c;
}

namespace {

std::vector<std::vector<std::uint32_t>> items_by_sku(const std::vector<std::uint32_t>& item_sku,
                                                     std::size_t n_skus) {
  std::vector<std::vector<std::uint32_t>> out(n_skus);
  for (std::size_t i = 0; i < item_sku.size(); ++i) {
    if (item_sku[i] >= n_skus) out.resize(item_sku[i] + 1);
    out[item_sku[i]].push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

double route_from_locations(const Layout& layout, std::size_t a_last, double y_max) {
  const double length = static_cast<double>(layout.rows) * layout.row_spacing;
  const double passes = static_cast<double>(a_last);
  // Aisles before the last are traversed end to end, alternating direction.
  // The last aisle is entered from the bottom when a_last is even: walk to the
  // farthest pick and back. Entered from the top, the walk down is the full aisle.
  double route = passes * length + passes * layout.crossover();
  route += a_last % 2 == 0 ? 2.0 * y_max : length;
  return route + passes * layout.crossover();
}

double route_length_indexed(const std::vector<std::uint32_t>& order,
                            const std::vector<std::vector<std::uint32_t>>& sku_items,
                            std::span<const std::uint32_t> location_of, const Layout& layout) {
  if (order.empty()) return 0.0;
  std::size_t a_last = 0;
  double y_max = 0.0;
  std::vector<std::size_t> required;
  required.reserve(order.size());
  for (auto sku : order) {
    if (sku >= sku_items.size() || sku_items[sku].empty())
      throw InventoryError("SKU " + std::to_string(sku) + " has no assigned item");
    std::size_t best = location_of[sku_items[sku].front()];
    for (auto it : sku_items[sku]) {
      const std::size_t loc = location_of[it];
      if (layout.io_distance(loc) < layout.io_distance(best) ||
          (layout.io_distance(loc) == layout.io_distance(best) && loc < best))
        best = loc;
    }
    required.push_back(best);
    a_last = std::max(a_last, layout.aisle_of(best));
  }
  for (auto loc : required) {
    if (layout.aisle_of(loc) != a_last) continue;
    y_max = std::max(y_max, static_cast<double>(layout.row_of(loc)) * layout.row_spacing);
  }
  return route_from_locations(layout, a_last, y_max);
}

}  // namespace

double sshape_route_length(const std::vector<std::uint32_t>& order, const Assignment& a,
                           const Layout& layout) {
  layout.validate();
  a.validate(layout.locations());
  std::size_t n_skus = 0;
  for (auto s : a.item_sku) n_skus = std::max<std::size_t>(n_skus, s + 1);
  return route_length_indexed(order, items_by_sku(a.item_sku, n_skus), a.location_of, layout);
}

std::vector<double> route_lengths(const OrderSet& orders, const Assignment& a, const Layout& layout) {
  layout.validate();
  a.validate(layout.locations());
  const auto index = items_by_sku(a.item_sku, orders.n_skus);
  std::vector<double> out;
  out.reserve(orders.orders.size());
  for (const auto& o : orders.orders) out.push_back(route_length_indexed(o, index, a.location_of, layout));
  return out;
}

double total_pick_distance(const OrderSet& orders, const Assignment& a, const Layout& layout) {
  double total = 0.0;
  for (double v : route_lengths(orders, a, layout)) total += v;
  return total;
}

PickDistanceObjective::PickDistanceObjective(const OrderSet& orders, std::vector<std::uint32_t> item_sku,
                                             const Layout& layout)
    : orders_(&orders), item_sku_(std::move(item_sku)), layout_(layout) {
  layout_.validate();
  if (item_sku_.size() != layout_.locations()) throw DimensionError("inventory size must equal location count");
  sku_items_ = items_by_sku(item_sku_, orders.n_skus);
  std::vector<std::vector<std::uint32_t>> sku_orders(sku_items_.size());
  for (std::size_t o = 0; o < orders.orders.size(); ++o)
    for (auto s : orders.orders[o]) {
      if (s >= sku_items_.size() || sku_items_[s].empty())
        throw InventoryError("SKU " + std::to_string(s) + " has no assigned item");
      sku_orders[s].push_back(static_cast<std::uint32_t>(o));
    }
  item_orders_.resize(item_sku_.size());
  for (std::size_t i = 0; i < item_sku_.size(); ++i) item_orders_[i] = sku_orders[item_sku_[i]];
  mark_.assign(orders.orders.size(), 0);
}

double PickDistanceObjective::order_length(std::size_t o) const {
  return route_length_indexed(orders_->orders[o], sku_items_, perm_, layout_);
}

double PickDistanceObjective::reset(std::span<const std::uint32_t> perm) {
  check_permutation(perm, item_sku_.size());
  perm_.assign(perm.begin(), perm.end());
  lengths_.resize(orders_->orders.size());
  double total = 0.0;
  for (std::size_t o = 0; o < lengths_.size(); ++o) total += lengths_[o] = order_length(o);
  return total;
}

double PickDistanceObjective::swap_delta(std::size_t i, std::size_t j) {
  if (i == j) return 0.0;
  ++stamp_;
  touched_.clear();
  for (auto o : item_orders_[i])
    if (mark_[o] != stamp_) {
      mark_[o] = stamp_;
      touched_.push_back(o);
    }
  for (auto o : item_orders_[j])
    if (mark_[o] != stamp_) {
      mark_[o] = stamp_;
      touched_.push_back(o);
    }
  std::swap(perm_[i], perm_[j]);
  double d = 0.0;
  for (auto o : touched_) d += order_length(o) - lengths_[o];
  std::swap(perm_[i], perm_[j]);
  return d;
}

void PickDistanceObjective::commit_swap(std::size_t i, std::size_t j) {
  std::swap(perm_[i], perm_[j]);
  for (auto o : item_orders_[i]) lengths_[o] = order_length(o);
  for (auto o : item_orders_[j]) lengths_[o] = order_length(o);
}

namespace {

void check_inventory(const std::vector<std::uint32_t>& item_sku, const Layout& layout) {
  layout.validate();
  if (item_sku.size() != layout.locations())
    throw DimensionError("inventory of " + std::to_string(item_sku.size()) + " items for " +
                         std::to_string(layout.locations()) + " locations");
}

std::vector<std::uint32_t> locations_by_io(const Layout& layout) {
  std::vector<std::uint32_t> locs(layout.locations());
  std::iota(locs.begin(), locs.end(), 0u);
  std::stable_sort(locs.begin(), locs.end(), [&](auto a, auto b) {
    return layout.io_distance(a) < layout.io_distance(b);
  });
  return locs;
}

std::vector<std::uint32_t> items_by_popularity(const std::vector<std::uint32_t>& item_sku,
                                               const std::vector<double>& popularity) {
  std::vector<std::uint32_t> items(item_sku.size());
  std::iota(items.begin(), items.end(), 0u);
  auto pop = [&](std::uint32_t i) { return item_sku[i] < popularity.size() ? popularity[item_sku[i]] : 0.0; };
  std::stable_sort(items.begin(), items.end(), [&](auto a, auto b) {
    if (pop(a) != pop(b)) return pop(a) > pop(b);
    return item_sku[a] < item_sku[b];
  });
  return items;
}

}  // namespace

Assignment policy_random(const std::vector<std::uint32_t>& item_sku, const Layout& layout,
                         std::uint64_t seed) {
  check_inventory(item_sku, layout);
  Assignment a{item_sku, Permutation(item_sku.size())};
  std::iota(a.location_of.begin(), a.location_of.end(), 0u);
  auto rng = Rng::stream(seed, "policy.random");
  rng.shuffle(a.location_of.begin(), a.location_of.end());
  return a;
}

Assignment policy_coi(const std::vector<std::uint32_t>& item_sku, const std::vector<double>& popularity,
                      const Layout& layout) {
  check_inventory(item_sku, layout);
  const auto items = items_by_popularity(item_sku, popularity);
  const auto locs = locations_by_io(layout);
  Assignment a{item_sku, Permutation(item_sku.size())};
  for (std::size_t r = 0; r < items.size(); ++r) a.location_of[items[r]] = locs[r];
  return a;
}

Assignment policy_abc(const std::vector<std::uint32_t>& item_sku, const std::vector<double>& popularity,
                      const Layout& layout, std::uint64_t seed, std::vector<double> class_shares) {
  check_inventory(item_sku, layout);
  if (class_shares.empty()) throw ParameterError("ABC needs at least one class");
  double total = 0.0;
  for (double s : class_shares) {
    if (!(s > 0.0)) throw ParameterError("ABC class shares must be positive");
    total += s;
  }
  const auto items = items_by_popularity(item_sku, popularity);
  const auto locs = locations_by_io(layout);
  const auto n = items.size();
  Assignment a{item_sku, Permutation(n)};
  auto rng = Rng::stream(seed, "policy.abc");
  std::size_t begin = 0;
  double acc = 0.0;
  for (std::size_t c = 0; c < class_shares.size(); ++c) {
    acc += class_shares[c];
    const auto end = c + 1 == class_shares.size()
                         ? n
                         : std::min(n, static_cast<std::size_t>(std::llround(acc / total * static_cast<double>(n))));
    std::vector<std::uint32_t> band(locs.begin() + static_cast<std::ptrdiff_t>(begin),
                                    locs.begin() + static_cast<std::ptrdiff_t>(end));
    rng.shuffle(band.begin(), band.end());
    for (std::size_t r = begin; r < end; ++r) a.location_of[items[r]] = band[r - begin];
    begin = end;
  }
  return a;
}

Assignment policy_oos(const OrderSet& orders, const std::vector<std::uint32_t>& item_sku,
                      const Layout& layout, const PermAnnealConfig& cfg) {
  check_inventory(item_sku, layout);
  PickDistanceObjective obj(orders, item_sku, layout);
  auto res = permutation_annealer(obj, cfg);
  return {item_sku, std::move(res.perm)};
}

QapInstance warehouse_qap(const OrderSet& orders, const std::vector<std::uint32_t>& item_sku,
                          const Layout& layout, const DistanceOptions& dist) {
  check_inventory(item_sku, layout);
  Matrix f = build_frequency_matrix(orders, item_sku);
  const auto pop = sku_popularity(orders);
  for (std::size_t i = 0; i < item_sku.size(); ++i) f(i, i) = pop[item_sku[i]];
  return QapInstance(std::move(f), build_distance_matrix(layout, dist));
}

Assignment policy_qap_decomp(const OrderSet& orders, const std::vector<std::uint32_t>& item_sku,
                             const Layout& layout, const QapPolicyOptions& opt, std::uint64_t seed) {
  const auto inst = warehouse_qap(orders, item_sku, layout, opt.distance);
  auto dopt = opt.decompose;
  dopt.k = opt.k ? opt.k : layout.columns;
  dopt.seed = seed;
  if (!dopt.fixed_locations && (dopt.k == layout.columns || dopt.k == layout.aisles())) {
    // Location subsets are the layout's own intervals: columns or aisles.
    Partition p{std::vector<std::uint32_t>(layout.locations()), dopt.k};
    for (std::size_t l = 0; l < p.size(); ++l)
      p.assignment[l] = static_cast<std::uint32_t>(dopt.k == layout.columns ? layout.column_of(l)
                                                                            : layout.aisle_of(l));
    dopt.fixed_locations = std::move(p);
  }
  auto res = solve_decomposed(inst, dopt);
  return {item_sku, std::move(res.perm)};
}

void write_assignment_csv(std::ostream& out, const Assignment& a) {
  out << "item_id,location_id\n";
  for (std::size_t i = 0; i < a.location_of.size(); ++i) out << i << ',' << a.location_of[i] << '\n';
}

Assignment read_assignment_csv(std::istream& in, const std::vector<std::uint32_t>& item_sku) {
  std::string line;
  bool header = false;
  Assignment a{item_sku, Permutation(item_sku.size(), ~0u)};
  while (std::getline(in, line)) {
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].starts_with('#')) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "item_id" || tok[1] != "location_id")
        throw ParseError("assignment CSV must start with 'item_id,location_id'");
      header = true;
      continue;
    }
    if (tok.size() != 2) throw ParseError("assignment row needs two fields");
    const auto i = parse_int(tok[0]), l = parse_int(tok[1]);
    if (i < 0 || static_cast<std::size_t>(i) >= item_sku.size() || l < 0)
      throw ParseError("assignment ids out of range");
    a.location_of[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(l);
  }
  if (!header) throw ParseError("missing assignment CSV header");
  if (!is_permutation(a.location_of)) throw ParseError("assignment is not a bijection");
  return a;
}

}  // namespace annealbench
