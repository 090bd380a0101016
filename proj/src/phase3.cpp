#include "snowsim/phase3.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "snowsim/errors.hpp"

namespace snowsim::phase3 {

namespace {

enum Dir { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

void validate_probability(double p_s) {
  if (!(p_s > 0.0) || p_s > 1.0)
    throw SimError(ErrorCode::InvalidArgument, "p_s must be in (0, 1]");
}

// Weighted quick-union with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }

  size_t find(size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  size_t size_of(size_t root) const { return size_[root]; }

 private:
  std::vector<size_t> parent_;
  std::vector<size_t> size_;
};

void validate_map(const BondMap& b) {
  if (b.width < 2 || b.height < 2)
    throw SimError(ErrorCode::InvalidArgument, "lattice needs width, height >= 2");
  const size_t h_expect = static_cast<size_t>(b.width - 1) *
                          static_cast<size_t>(b.height);
  const size_t v_expect = static_cast<size_t>(b.width) *
                          static_cast<size_t>(b.height - 1);
  if (b.horizontal.size() != h_expect || b.vertical.size() != v_expect)
    throw SimError(ErrorCode::InvalidArgument, "bond vectors do not match dims");
}

}  // namespace

double bond_probability(int64_t snowball_size, double p_s) {
  if (snowball_size < 4)
    throw SimError(ErrorCode::InvalidArgument,
                   "quarter allocation needs at least 4 vertices");
  validate_probability(p_s);
  return phase2::burst_success_probability(p_s, snowball_size / 4);
}

bool BondMap::h_at(int x, int y) const {
  if (x < 0 || x >= width - 1 || y < 0 || y >= height)
    throw SimError(ErrorCode::InvalidArgument, "horizontal bond out of range");
  return horizontal[static_cast<size_t>(y) * static_cast<size_t>(width - 1) +
                    static_cast<size_t>(x)] != 0;
}

bool BondMap::v_at(int x, int y) const {
  if (x < 0 || x >= width || y < 0 || y >= height - 1)
    throw SimError(ErrorCode::InvalidArgument, "vertical bond out of range");
  return vertical[static_cast<size_t>(y) * static_cast<size_t>(width) +
                  static_cast<size_t>(x)] != 0;
}

int64_t BondMap::present_count() const {
  auto ones = [](const std::vector<char>& v) {
    return std::count(v.begin(), v.end(), char{1});
  };
  return ones(horizontal) + ones(vertical);
}

int64_t BondMap::bond_count() const {
  return static_cast<int64_t>(horizontal.size() + vertical.size());
}

BondMap generate_bonds(const LatticeSpec& spec, RandomStream& rng) {
  if (spec.width < 2 || spec.height < 2)
    throw SimError(ErrorCode::InvalidArgument, "lattice needs width, height >= 2");
  const double p = bond_probability(spec.snowball_size, spec.p_s);

  BondMap map;
  map.width = spec.width;
  map.height = spec.height;
  map.horizontal.resize(static_cast<size_t>(spec.width - 1) *
                        static_cast<size_t>(spec.height));
  map.vertical.resize(static_cast<size_t>(spec.width) *
                      static_cast<size_t>(spec.height - 1));
  for (char& b : map.horizontal) b = rng.bernoulli(p) ? 1 : 0;
  for (char& b : map.vertical) b = rng.bernoulli(p) ? 1 : 0;
  return map;
}

PercolationReport percolation_report(const BondMap& bonds) {
  validate_map(bonds);
  const int w = bonds.width;
  const int h = bonds.height;
  const size_t sites = static_cast<size_t>(w) * static_cast<size_t>(h);
  auto site = [w](int x, int y) {
    return static_cast<size_t>(y) * static_cast<size_t>(w) +
           static_cast<size_t>(x);
  };

  DisjointSets dsu(sites);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x + 1 < w; ++x)
      if (bonds.h_at(x, y)) dsu.unite(site(x, y), site(x + 1, y));
  for (int y = 0; y + 1 < h; ++y)
    for (int x = 0; x < w; ++x)
      if (bonds.v_at(x, y)) dsu.unite(site(x, y), site(x, y + 1));

  PercolationReport rep;
  size_t largest = 0;
  for (size_t v = 0; v < sites; ++v) {
    const size_t r = dsu.find(v);
    if (r == v) largest = std::max(largest, dsu.size_of(r));
  }
  rep.largest_cluster_fraction =
      static_cast<double>(largest) / static_cast<double>(sites);

  std::vector<char> left(sites, 0), right(sites, 0), top(sites, 0), bottom(sites, 0);
  for (int y = 0; y < h; ++y) {
    left[dsu.find(site(0, y))] = 1;
    right[dsu.find(site(w - 1, y))] = 1;
  }
  for (int x = 0; x < w; ++x) {
    top[dsu.find(site(x, 0))] = 1;
    bottom[dsu.find(site(x, h - 1))] = 1;
  }
  for (size_t v = 0; v < sites; ++v) {
    if (left[v] && right[v]) rep.crosses_left_right = true;
    if (top[v] && bottom[v]) rep.crosses_top_bottom = true;
  }
  return rep;
}

AssembledLattice assemble_small_lattice(std::vector<std::vector<phase2::Snowball>> balls,
                                        double p_s, RandomStream& rng) {
  validate_probability(p_s);
  const int h = static_cast<int>(balls.size());
  if (h < 2)
    throw SimError(ErrorCode::InvalidArgument, "lattice needs width, height >= 2");
  const int w = static_cast<int>(balls[0].size());
  for (const auto& row : balls)
    if (static_cast<int>(row.size()) != w)
      throw SimError(ErrorCode::InvalidArgument, "grid rows differ in length");
  if (w < 2)
    throw SimError(ErrorCode::InvalidArgument, "lattice needs width, height >= 2");
  if (w > 4 || h > 4)
    throw SimError(ErrorCode::GridCapped, "full-graph mode capped");

  // Quarter allocations are decided before anything fires: leaves first,
  // then the bulk by descending degree, dealt round-robin north, east,
  // south, west until each direction holds floor(size/4) qubits.
  struct Site {
    QubitId root = 0;
    std::array<std::vector<QubitId>, 4> quarter;
  };
  std::vector<std::vector<Site>> sites(static_cast<size_t>(h),
                                       std::vector<Site>(static_cast<size_t>(w)));
  AssembledLattice out;
  TimeStep max_step = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      GraphState& g = balls[static_cast<size_t>(y)][static_cast<size_t>(x)].graph;
      const auto ids = g.vertices();
      if (ids.size() < 4)
        throw SimError(ErrorCode::InvalidArgument,
                       "quarter allocation needs at least 4 vertices");
      Site& site = sites[static_cast<size_t>(y)][static_cast<size_t>(x)];
      site.root = ids.front();

      std::vector<QubitId> order;
      for (QubitId v : ids)
        if (g.degree(v) <= 1) order.push_back(v);
      std::vector<QubitId> bulk;
      for (QubitId v : ids)
        if (g.degree(v) > 1) bulk.push_back(v);
      std::stable_sort(bulk.begin(), bulk.end(), [&g](QubitId a, QubitId b) {
        return g.degree(a) > g.degree(b);
      });
      order.insert(order.end(), bulk.begin(), bulk.end());

      const size_t m = ids.size() / 4;
      for (size_t i = 0; i < 4 * m; ++i)
        site.quarter[i % 4].push_back(order[i]);

      max_step = std::max(max_step, g.current_step());
      out.graph.absorb(g);
    }
  }
  // The whole assembly is one parallel round.
  out.graph.set_current_step(max_step + 1);

  auto init_map = [w, h](BondMap& m) {
    m.width = w;
    m.height = h;
    m.horizontal.assign(static_cast<size_t>(w - 1) * static_cast<size_t>(h), 0);
    m.vertical.assign(static_cast<size_t>(w) * static_cast<size_t>(h - 1), 0);
  };
  init_map(out.bonds);
  init_map(out.raw_bonds);

  struct Junction {
    QubitId a = 0, b = 0;  // surviving endpoints on either side
  };
  // Successful junctions per bond, horizontal block then vertical block.
  std::vector<std::vector<Junction>> survivors(
      static_cast<size_t>(out.bonds.bond_count()));

  auto fire = [&](const Site& sa, Dir da, const Site& sb, Dir db, size_t bond) {
    const auto& qa = sa.quarter[da];
    const auto& qb = sb.quarter[db];
    const size_t pairs = std::min(qa.size(), qb.size());
    for (size_t i = 0; i < pairs; ++i) {
      if (rng.bernoulli(p_s)) {
        out.graph.apply_fusion_success(qa[i], qb[i]);
        survivors[bond].push_back({qa[i], qb[i]});
      } else {
        out.graph.apply_fusion_failure(qa[i], qb[i]);
      }
    }
  };

  const size_t h_block = static_cast<size_t>(w - 1) * static_cast<size_t>(h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x + 1 < w; ++x)
      fire(sites[static_cast<size_t>(y)][static_cast<size_t>(x)], kEast,
           sites[static_cast<size_t>(y)][static_cast<size_t>(x + 1)], kWest,
           static_cast<size_t>(y) * static_cast<size_t>(w - 1) +
               static_cast<size_t>(x));
  for (int y = 0; y + 1 < h; ++y)
    for (int x = 0; x < w; ++x)
      fire(sites[static_cast<size_t>(y)][static_cast<size_t>(x)], kSouth,
           sites[static_cast<size_t>(y + 1)][static_cast<size_t>(x)], kNorth,
           h_block + static_cast<size_t>(y) * static_cast<size_t>(w) +
               static_cast<size_t>(x));

  // Bond qualification happens only after every attempt has fired, because
  // late failures can sever a junction from its site root.
  auto anchored = [&](QubitId v, QubitId root) {
    return out.graph.contains(root) && out.graph.path_length(v, root).has_value();
  };
  for (size_t bond = 0; bond < survivors.size(); ++bond) {
    if (survivors[bond].empty()) continue;
    const bool vertical = bond >= h_block;
    const size_t local = vertical ? bond - h_block : bond;
    const int stride = vertical ? w : w - 1;
    const int x = static_cast<int>(local % static_cast<size_t>(stride));
    const int y = static_cast<int>(local / static_cast<size_t>(stride));
    const Site& sa = sites[static_cast<size_t>(y)][static_cast<size_t>(x)];
    const Site& sb = vertical ? sites[static_cast<size_t>(y + 1)][static_cast<size_t>(x)]
                              : sites[static_cast<size_t>(y)][static_cast<size_t>(x + 1)];

    auto& raw = vertical ? out.raw_bonds.vertical : out.raw_bonds.horizontal;
    auto& qual = vertical ? out.bonds.vertical : out.bonds.horizontal;
    raw[local] = 1;
    for (const Junction& j : survivors[bond]) {
      if (anchored(j.a, sa.root) && anchored(j.b, sb.root)) {
        qual[local] = 1;
        break;
      }
    }
  }
  return out;
}

}  // namespace snowsim::phase3
