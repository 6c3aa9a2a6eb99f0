#include <algorithm>
#include <unordered_map>

#include "wc/group_realization.hpp"

namespace wc {

namespace {

// Coordinates of the domain of xi: one field element per root slot plus an
// index into the enumerated T(x).
struct DomainLayout {
  std::vector<Position> y, upper, lower, u;
  std::vector<std::vector<Fp>> torus;
  std::size_t slots() const { return y.size() + upper.size() + lower.size() + u.size(); }
};

DomainLayout layout_of(const CrossSectionData& data, const PrimeField& field) {
  return {data.radical(), data.phi_plus(), data.phi_minus(), data.level_positions(1), enumerate_torus(field, data)};
}

// Domain size, or 0 when it exceeds `cap`.
std::uint64_t domain_size(const DomainLayout& l, std::uint32_t p, std::uint64_t cap) {
  std::uint64_t total = l.torus.size();
  for (std::size_t i = 0; i < l.slots(); ++i) {
    if (total > cap / p) return 0;
    total *= p;
  }
  return total <= cap ? total : 0;
}

CellPoint<Fp> decode(const PrimeField& field, int n, const DomainLayout& l, std::uint64_t index) {
  auto fill = [&](const std::vector<Position>& ps) {
    Matrix<Fp> m = identity_matrix(field, static_cast<std::size_t>(n));
    for (const auto& p : ps) {
      m(p.row, p.col) = field.from_int(static_cast<std::int64_t>(index % field.p));
      index /= field.p;
    }
    return m;
  };
  CellPoint<Fp> pt;
  pt.y = fill(l.y);
  pt.ell.upper = fill(l.upper);
  pt.ell.lower = fill(l.lower);
  pt.u = fill(l.u);
  pt.ell.diag = l.torus[index];
  return pt;
}

std::string key_of(const Matrix<Fp>& m) {
  std::string k(m.data().size(), '\0');
  for (std::size_t i = 0; i < m.data().size(); ++i) k[i] = static_cast<char>(m.data()[i].value());
  return k;
}

// F_2 matrices up to 8x8, row i in byte i.
using Bits = std::uint64_t;

Bits bit_mul(Bits a, Bits b, int n) {
  Bits c = 0;
  for (int i = 0; i < n; ++i) {
    const unsigned row = (a >> (8 * i)) & 0xffu;
    Bits acc = 0;
    for (int k = 0; k < n; ++k)
      if (row >> k & 1u) acc ^= (b >> (8 * k)) & 0xffu;
    c |= acc << (8 * i);
  }
  return c;
}

Bits bit_identity(int n) {
  Bits m = 0;
  for (int i = 0; i < n; ++i) m |= Bits{1} << (8 * i + i);
  return m;
}

// Inverse of a unipotent matrix: I + N + ... + N^{n-1} over F_2.
Bits bit_unipotent_inverse(Bits y, int n) {
  const Bits id = bit_identity(n);
  const Bits nil = y ^ id;
  Bits acc = id, p = id;
  for (int k = 1; k < n; ++k) {
    p = bit_mul(p, nil, n);
    acc ^= p;
  }
  return acc;
}

Bits bit_fill(const std::vector<Position>& ps, std::uint64_t& index, int n) {
  Bits m = bit_identity(n);
  for (const auto& p : ps) {
    if (index & 1u) m |= Bits{1} << (8 * p.row + p.col);
    index >>= 1;
  }
  return m;
}

Bits bit_xi(const DomainLayout& l, Bits lift, std::uint64_t index, int n) {
  const Bits y = bit_fill(l.y, index, n);
  const Bits up = bit_fill(l.upper, index, n);
  const Bits lo = bit_fill(l.lower, index, n);
  const Bits u = bit_fill(l.u, index, n);
  const Bits z = bit_mul(bit_mul(lift, bit_mul(up, lo, n), n), u, n);
  return bit_mul(bit_mul(y, z, n), bit_unipotent_inverse(y, n), n);
}

struct Keyed {
  std::string key;
  std::uint64_t id;
};

// First pair of equal keys in (key, id) order.
std::optional<std::pair<std::uint64_t, std::uint64_t>> first_duplicate(std::vector<Keyed>& v) {
  std::sort(v.begin(), v.end(), [](const Keyed& a, const Keyed& b) { return a.key != b.key ? a.key < b.key : a.id < b.id; });
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i].key == v[i - 1].key) return std::make_pair(v[i - 1].id, v[i].id);
  return std::nullopt;
}

constexpr std::uint64_t kChunk = 1u << 16;

// Streams ids 0..count-1 through `key_at` in chunks (computed in parallel when
// asked) and returns the first id whose key repeats, with the id it repeats.
// The answer does not depend on the execution mode.
template <class Key, class KeyAt>
std::optional<std::pair<std::uint64_t, std::uint64_t>> stream_first_repeat(std::uint64_t count, bool par, KeyAt key_at) {
  std::unordered_map<Key, std::uint64_t> seen;
  std::vector<Key> buf;
  for (std::uint64_t base = 0; base < count; base += kChunk) {
    const std::uint64_t len = std::min(kChunk, count - base);
    buf.resize(len);
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(len); ++i) buf[i] = key_at(base + static_cast<std::uint64_t>(i));
    for (std::uint64_t i = 0; i < len; ++i) {
      auto [it, fresh] = seen.try_emplace(buf[i], base + i);
      if (!fresh) return std::make_pair(it->second, base + i);
    }
  }
  return std::nullopt;
}

CollisionWitness make_witness(const PrimeField& field, const CrossSectionData& data, CellPoint<Fp> a, CellPoint<Fp> b) {
  CollisionWitness w{field.p, std::move(a), std::move(b), {}};
  w.image = xi(field, data, w.first);
  if (!(xi(field, data, w.second) == w.image) || w.first == w.second)
    throw InconsistencyError("collision witness failed re-verification");
  return w;
}

} // namespace

CollisionSearch collision_search(const CrossSectionData& data, std::uint64_t budget, std::uint64_t seed,
                                 const std::vector<std::uint32_t>& primes, Execution exec) {
  CollisionSearch out;
  const int n = data.n();
  const bool par = exec == Execution::parallel;
  for (std::uint32_t p : primes) {
    if (p >= 256) throw InputError("collision search supports primes below 256");
    const PrimeField field(p);
    out.primes_tried.push_back(p);
    const DomainLayout l = layout_of(data, field);
    const std::uint64_t total = domain_size(l, p, budget);
    out.exhaustive = total != 0;
    const std::uint64_t count = total ? total : budget;

    if (total) {
      std::optional<std::pair<std::uint64_t, std::uint64_t>> dup;
      if (p == 2 && n <= 8) {
        const Matrix<Fp> lm = lift(field, data);
        Bits lb = 0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (lm(i, j).value()) lb |= Bits{1} << (8 * i + j);
        dup = stream_first_repeat<Bits>(count, par, [&](std::uint64_t i) { return bit_xi(l, lb, i, n); });
      } else {
        dup = stream_first_repeat<std::string>(count, par, [&](std::uint64_t i) { return key_of(xi(field, data, decode(field, n, l, i))); });
      }
      if (dup) {
        out.points += dup->second + 1;
        out.witness = make_witness(field, data, decode(field, n, l, dup->first), decode(field, n, l, dup->second));
        return out;
      }
      out.points += count;
      continue;
    }

    // Sampling: equal images from distinct points.
    auto point_at = [&](std::uint64_t i) {
      std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (i + 1)));
      return random_cell_point(field, data, rng);
    };
    std::unordered_map<std::string, std::uint64_t> seen;
    std::vector<std::string> buf;
    for (std::uint64_t base = 0; base < count; base += kChunk) {
      const std::uint64_t len = std::min(kChunk, count - base);
      buf.resize(len);
#pragma omp parallel for schedule(static) if (par)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(len); ++i)
        buf[i] = key_of(xi(field, data, point_at(base + static_cast<std::uint64_t>(i))));
      for (std::uint64_t i = 0; i < len; ++i) {
        auto [it, fresh] = seen.try_emplace(buf[i], base + i);
        if (fresh) continue;
        CellPoint<Fp> a = point_at(it->second), b = point_at(base + i);
        if (a == b) continue;
        out.points += base + i + 1;
        out.witness = make_witness(field, data, std::move(a), std::move(b));
        return out;
      }
    }
    out.points += count;
  }
  return out;
}

InjectivityCheck exhaustive_injectivity(const CrossSectionData& data, std::uint32_t prime, std::uint64_t budget) {
  const PrimeField field(prime);
  const int n = data.n();
  const DomainLayout l = layout_of(data, field);
  const std::uint64_t total = domain_size(l, prime, budget);
  if (!total) throw BudgetExceeded("domain of xi exceeds the enumeration budget");
  InjectivityCheck out;
  out.points = total;
  out.roundtrip = data.quasi_convex();
  std::vector<Keyed> keys(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    const CellPoint<Fp> pt = decode(field, n, l, i);
    const Matrix<Fp> g = xi(field, data, pt);
    if (out.roundtrip) {
      try {
        out.roundtrip = sigma(field, data, g) == pt;
      } catch (const NotInCell&) {
        out.roundtrip = false;
      }
    }
    keys[i] = {key_of(g), i};
  }
  auto dup = first_duplicate(keys);
  out.injective = !dup;
  if (dup) out.witness = make_witness(field, data, decode(field, n, l, dup->first), decode(field, n, l, dup->second));
  return out;
}

} // namespace wc
