#include "eqdecomp/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "eqdecomp/error.hpp"

namespace eqd {

Permutation::Permutation(std::size_t n) : map_(n) { std::iota(map_.begin(), map_.end(), 0); }

Permutation Permutation::from_images(std::span<const Vertex> images) {
  const std::size_t n = images.size();
  Permutation p;
  p.map_.resize(n);
  std::vector<char> hit(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = images[i];
    if (v < 1 || static_cast<std::size_t>(v) > n) {
      throw ValidationError("image of vertex " + std::to_string(i + 1) + " is " +
                            std::to_string(v) + ", outside 1.." + std::to_string(n));
    }
    if (hit[v - 1]) throw ValidationError("vertex " + std::to_string(v) + " is the image of two vertices");
    hit[v - 1] = 1;
    p.map_[i] = static_cast<std::size_t>(v - 1);
  }
  return p;
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<std::vector<Vertex>>& cycles) {
  Permutation p(n);
  std::vector<char> seen(n, 0);
  for (const auto& cyc : cycles) {
    for (Vertex v : cyc) {
      if (v < 1 || static_cast<std::size_t>(v) > n) {
        throw ValidationError("vertex " + std::to_string(v) + " in cycle is outside 1.." +
                              std::to_string(n));
      }
      if (seen[v - 1]) throw ValidationError("vertex " + std::to_string(v) + " appears twice in cycles");
      seen[v - 1] = 1;
    }
    for (std::size_t t = 0; t < cyc.size(); ++t) {
      p.map_[cyc[t] - 1] = static_cast<std::size_t>(cyc[(t + 1) % cyc.size()] - 1);
    }
  }
  return p;
}

Vertex Permutation::operator()(Vertex v) const {
  if (v < 1 || static_cast<std::size_t>(v) > map_.size()) {
    throw ValidationError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(map_.size()));
  }
  return static_cast<Vertex>(map_[v - 1] + 1);
}

std::vector<Vertex> Permutation::images() const {
  std::vector<Vertex> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) out[i] = static_cast<Vertex>(map_[i] + 1);
  return out;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.map_.resize(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) p.map_[map_[i]] = i;
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

std::vector<std::vector<Vertex>> Permutation::cycles() const {
  std::vector<std::vector<Vertex>> out;
  for (auto& orb : orbits(*this))
    if (orb.size() > 1) out.push_back(std::move(orb));
  return out;
}

std::string Permutation::to_string() const {
  const auto cyc = cycles();
  if (cyc.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cyc) {
    os << '(';
    for (std::size_t t = 0; t < c.size(); ++t) os << (t ? "," : "") << c[t];
    os << ')';
  }
  return os.str();
}

std::uint64_t Permutation::order() const {
  std::uint64_t ord = 1;
  for (const auto& orb : orbits(*this)) {
    const std::uint64_t len = orb.size();
    const std::uint64_t g = std::gcd(ord, len);
    const std::uint64_t factor = len / g;
    if (ord > UINT64_MAX / factor) throw ValidationError("permutation order exceeds 64 bits");
    ord *= factor;
  }
  return ord;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw ValidationError("cannot compose permutations on " + std::to_string(a.size()) + " and " +
                          std::to_string(b.size()) + " points");
  }
  std::vector<Vertex> img(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) img[i] = static_cast<Vertex>(a.at(b.at(i)) + 1);
  return Permutation::from_images(img);
}

Permutation parse_cycles(std::string_view text, std::size_t n) {
  std::vector<std::vector<Vertex>> cycles;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> void {
    throw ValidationError("cycle notation, column " + std::to_string(pos + 1) + ": " + why);
  };
  auto skip_sep = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
      ++pos;
  };

  skip_sep();
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<Vertex> cyc;
    for (;;) {
      skip_sep();
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
        if (text[pos] == '(') fail("nested '('");
        fail(std::string("unexpected character '") + text[pos] + "'");
      }
      long long v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > static_cast<long long>(n) + 1) v = static_cast<long long>(n) + 1;  // clamp, reported below
        ++pos;
      }
      if (v < 1 || static_cast<std::size_t>(v) > n) {
        throw ValidationError("cycle notation: vertex " + std::to_string(v) + " outside 1.." +
                              std::to_string(n));
      }
      cyc.push_back(static_cast<Vertex>(v));
    }
    cycles.push_back(std::move(cyc));
    skip_sep();
  }
  return Permutation::from_cycles(n, cycles);
}

Permutation power(const Permutation& phi, std::uint64_t e) {
  // Per orbit, step e mod (orbit length) along the cycle.
  std::vector<Vertex> img(phi.size());
  for (const auto& orb : orbits(phi)) {
    const std::size_t len = orb.size();
    const std::size_t s = static_cast<std::size_t>(e % len);
    for (std::size_t t = 0; t < len; ++t) img[orb[t] - 1] = orb[(t + s) % len];
  }
  return Permutation::from_images(img);
}

OrbitPartition orbits(const Permutation& phi) {
  const std::size_t n = phi.size();
  OrbitPartition out;
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<Vertex> orb;
    for (std::size_t j = i; !seen[j]; j = phi.at(j)) {
      seen[j] = 1;
      orb.push_back(static_cast<Vertex>(j + 1));
    }
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> f;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

AutoClass classify(const Permutation& phi, PrimeOrder order) {
  AutoClass c;
  std::size_t nontrivial = 0;
  std::size_t size = 0;
  bool mixed = false;
  for (const auto& orb : orbits(phi)) {
    if (orb.size() == 1) {
      ++c.N;
      continue;
    }
    ++nontrivial;
    if (size == 0) size = orb.size();
    else if (size != orb.size()) mixed = true;
  }
  if (nontrivial == 0) {
    c.kind = AutoKind::identity;
  } else if (mixed) {
    c.kind = AutoKind::general;
  } else {
    c.k = size;
    c.kind = c.N == 0 ? AutoKind::uniform : AutoKind::basic;
  }
  c.order = phi.order();
  const auto f = factorize(c.order);
  c.separable = std::all_of(f.begin(), f.end(), [](const auto& pe) { return pe.second == 1; });
  if (c.separable) {
    for (const auto& [p, e] : f) c.primes.push_back(p);
    if (order == PrimeOrder::largest_first) std::reverse(c.primes.begin(), c.primes.end());
  }
  return c;
}

std::string_view kind_name(AutoKind k) {
  switch (k) {
    case AutoKind::identity: return "identity";
    case AutoKind::uniform: return "uniform";
    case AutoKind::basic: return "basic";
    case AutoKind::general: return "general";
  }
  return "general";
}

SeparablePower separable_power(const Permutation& phi) {
  if (phi.is_identity()) throw ValidationError("separable_power: permutation is the identity");
  std::uint64_t l = 1;
  for (const auto& [p, e] : factorize(phi.order()))
    for (int t = 1; t < e; ++t) l *= p;
  return {power(phi, l), l};
}

}  // namespace eqd
