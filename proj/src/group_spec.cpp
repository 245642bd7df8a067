#include <charconv>
#include <fstream>
#include <sstream>

#include "sumsetlab/group.hpp"

namespace sumsetlab {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

long long parse_int(const std::string& s, const std::string& context) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty())
    throw GroupError("group spec '" + context + "': '" + s + "' is not an integer");
  return v;
}

long long modpow(long long base, long long e, long long m) {
  long long r = 1 % m;
  base %= m;
  if (base < 0) base += m;
  for (; e > 0; --e) r = (r * base) % m;
  return r;
}

std::size_t spec_order(const GroupSpec& s) {
  switch (s.kind) {
    case GroupKind::kCyclic: return static_cast<std::size_t>(s.params[0]);
    case GroupKind::kQuaternion: return 8;
    case GroupKind::kDihedral: return 2 * static_cast<std::size_t>(s.params[0]);
    case GroupKind::kHeisenberg: {
      const auto p = static_cast<std::size_t>(s.params[0]);
      return p * p * p;
    }
    case GroupKind::kFrobenius: return static_cast<std::size_t>(s.params[0] * s.params[1]);
    case GroupKind::kDirectProduct: {
      std::size_t n = 1;
      for (const auto& c : s.children) {
        n *= spec_order(c);
        if (n > kMaxGroupOrder) return n;
      }
      return n;
    }
    case GroupKind::kTable: return 0;
  }
  return 0;
}

}  // namespace

std::string GroupSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case GroupKind::kCyclic: os << "cyclic:" << params.at(0); break;
    case GroupKind::kQuaternion: os << "quaternion"; break;
    case GroupKind::kDihedral: os << "dihedral:" << params.at(0); break;
    case GroupKind::kHeisenberg: os << "heisenberg:" << params.at(0); break;
    case GroupKind::kFrobenius:
      os << "frobenius:" << params.at(0) << ':' << params.at(1) << ':' << params.at(2);
      break;
    case GroupKind::kDirectProduct:
      os << "product:";
      for (std::size_t i = 0; i < children.size(); ++i) os << (i ? "," : "") << children[i].to_string();
      break;
    case GroupKind::kTable: os << "table:" << table_source.value_or(""); break;
  }
  return os.str();
}

GroupSpec parse_group_spec(const std::string& text) {
  GroupSpec spec;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto int_params = [&](std::size_t expected) {
    auto parts = split(rest, ':');
    if (rest.empty() || parts.size() != expected)
      throw GroupError("group spec '" + text + "': expected " + std::to_string(expected) + " parameter(s)");
    for (const auto& p : parts) spec.params.push_back(parse_int(p, text));
  };

  if (head == "cyclic") {
    spec.kind = GroupKind::kCyclic;
    int_params(1);
  } else if (head == "quaternion") {
    spec.kind = GroupKind::kQuaternion;
    if (!rest.empty()) throw GroupError("group spec '" + text + "': quaternion takes no parameters");
  } else if (head == "dihedral") {
    spec.kind = GroupKind::kDihedral;
    int_params(1);
  } else if (head == "heisenberg") {
    spec.kind = GroupKind::kHeisenberg;
    int_params(1);
  } else if (head == "frobenius") {
    spec.kind = GroupKind::kFrobenius;
    int_params(3);
  } else if (head == "product") {
    spec.kind = GroupKind::kDirectProduct;
    for (const auto& child : split(rest, ',')) spec.children.push_back(parse_group_spec(child));
  } else if (head == "table") {
    spec.kind = GroupKind::kTable;
    if (rest.empty()) throw GroupError("group spec '" + text + "': missing table path");
    spec.table_source = rest;
  } else {
    throw GroupError("unknown group kind '" + head + "' in spec '" + text + "'");
  }
  check_group_spec(spec);
  return spec;
}

void check_group_spec(const GroupSpec& s) {
  const std::string name = s.to_string();
  auto need = [&](bool cond, const std::string& why) {
    if (!cond) throw GroupError("invalid group spec '" + name + "': " + why);
  };
  switch (s.kind) {
    case GroupKind::kCyclic:
      need(s.params.size() == 1 && s.params[0] >= 1, "cyclic requires n >= 1");
      break;
    case GroupKind::kQuaternion: break;
    case GroupKind::kDihedral:
      need(s.params.size() == 1 && s.params[0] >= 1, "dihedral requires n >= 1");
      break;
    case GroupKind::kHeisenberg:
      need(s.params.size() == 1 && is_prime(s.params[0]) && s.params[0] % 2 == 1,
           "heisenberg requires one odd prime p");
      break;
    case GroupKind::kFrobenius: {
      need(s.params.size() == 3, "frobenius requires p:q:k");
      const long long p = s.params[0], q = s.params[1], k = s.params[2];
      need(is_prime(p) && is_prime(q) && q < p, "frobenius requires primes q < p");
      need(modpow(k, q, p) == 1, "frobenius requires k^q = 1 (mod p)");
      need(((k % p) + p) % p != 1, "frobenius requires k != 1 (mod p)");
      break;
    }
    case GroupKind::kDirectProduct:
      need(s.children.size() >= 2, "direct product requires at least two factors");
      for (const auto& c : s.children) check_group_spec(c);
      break;
    case GroupKind::kTable:
      need(s.table_source.has_value() && !s.table_source->empty(), "table requires a path");
      break;
  }
  if (s.kind != GroupKind::kTable) {
    const std::size_t n = spec_order(s);
    need(n <= kMaxGroupOrder, "order " + std::to_string(n) + " exceeds the cap of " + std::to_string(kMaxGroupOrder));
  }
}

FiniteGroup build_group(const GroupSpec& spec) {
  check_group_spec(spec);
  switch (spec.kind) {
    case GroupKind::kCyclic: return cyclic_group(static_cast<std::size_t>(spec.params[0]));
    case GroupKind::kQuaternion: return quaternion_group();
    case GroupKind::kDihedral: return dihedral_group(static_cast<std::size_t>(spec.params[0]));
    case GroupKind::kHeisenberg: return heisenberg_group(static_cast<std::size_t>(spec.params[0]));
    case GroupKind::kFrobenius: {
      const long long p = spec.params[0];
      const long long k = ((spec.params[2] % p) + p) % p;
      return frobenius_group(static_cast<std::size_t>(p), static_cast<std::size_t>(spec.params[1]),
                             static_cast<std::size_t>(k));
    }
    case GroupKind::kDirectProduct: {
      FiniteGroup g = build_group(spec.children[0]);
      for (std::size_t i = 1; i < spec.children.size(); ++i) g = direct_product(g, build_group(spec.children[i]));
      return g;
    }
    case GroupKind::kTable: return load_table_group(*spec.table_source);
  }
  throw GroupError("unreachable group kind");
}

namespace {

template <class Mul>
FiniteGroup tabulate(std::size_t n, std::string label, Mul&& mul) {
  CayleyTable t{n, std::vector<Element>(n * n)};
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t.op[a * n + b] = static_cast<Element>(mul(a, b));
  return FiniteGroup::from_table(std::move(t), std::move(label));
}

}  // namespace

FiniteGroup cyclic_group(std::size_t n) {
  if (n < 1) throw GroupError("cyclic group requires n >= 1");
  return tabulate(n, "cyclic:" + std::to_string(n), [n](Element a, Element b) { return (a + b) % n; });
}

FiniteGroup quaternion_group() {
  // Unit index u in {1,i,j,k} -> 0..3; element index = 2*u + sign.
  static constexpr int kUnitProduct[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kSignFlip[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  return tabulate(8, "quaternion", [](Element a, Element b) {
    const int ua = static_cast<int>(a / 2), ub = static_cast<int>(b / 2);
    const int sign = static_cast<int>(a % 2) ^ static_cast<int>(b % 2) ^ kSignFlip[ua][ub];
    return 2 * kUnitProduct[ua][ub] + sign;
  });
}

FiniteGroup dihedral_group(std::size_t n) {
  if (n < 1) throw GroupError("dihedral group requires n >= 1");
  return tabulate(2 * n, "dihedral:" + std::to_string(n), [n](Element x, Element y) {
    const std::size_t a = x % n, b = x / n, c = y % n, d = y / n;
    const std::size_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
    return rot + n * ((b + d) % 2);
  });
}

FiniteGroup heisenberg_group(std::size_t p) {
  const std::size_t n = p * p * p;
  return tabulate(n, "heisenberg:" + std::to_string(p), [p](Element x, Element y) {
    const std::size_t a1 = x / (p * p), b1 = (x / p) % p, c1 = x % p;
    const std::size_t a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
    const std::size_t a = (a1 + a2) % p, b = (b1 + b2) % p, c = (c1 + c2 + a1 * b2) % p;
    return a * p * p + b * p + c;
  });
}

FiniteGroup frobenius_group(std::size_t p, std::size_t q, std::size_t k) {
  std::vector<std::size_t> kpow(q);
  kpow[0] = 1;
  for (std::size_t i = 1; i < q; ++i) kpow[i] = (kpow[i - 1] * k) % p;
  const std::string label = "frobenius:" + std::to_string(p) + ":" + std::to_string(q) + ":" + std::to_string(k);
  return tabulate(p * q, label, [&](Element u, Element v) {
    const std::size_t x1 = u / q, y1 = u % q, x2 = v / q, y2 = v % q;
    return ((x1 + kpow[y1] * x2) % p) * q + (y1 + y2) % q;
  });
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = h.order();
  if (g.order() * m > kMaxGroupOrder) throw GroupError("direct product exceeds the order cap");
  return tabulate(g.order() * m, "product:" + g.label() + "," + h.label(), [&](Element x, Element y) {
    return g.mul(static_cast<Element>(x / m), static_cast<Element>(y / m)) * m +
           h.mul(static_cast<Element>(x % m), static_cast<Element>(y % m));
  });
}

CayleyTable read_cayley_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroupError("cannot read table file '" + path + "'");
  long long n = 0;
  if (!(in >> n) || n < 1) throw GroupError("table file '" + path + "': first line must be a positive order");
  if (static_cast<std::size_t>(n) > kMaxGroupOrder)
    throw GroupError("table file '" + path + "': order exceeds the cap of " + std::to_string(kMaxGroupOrder));
  CayleyTable t{static_cast<std::size_t>(n), {}};
  t.op.reserve(t.order * t.order);
  for (std::size_t i = 0; i < t.order * t.order; ++i) {
    long long v = 0;
    if (!(in >> v)) throw GroupError("table file '" + path + "': expected " + std::to_string(t.order * t.order) + " entries");
    if (v < 0 || v >= n)
      throw GroupError("table file '" + path + "': entry " + std::to_string(v) + " out of range at row " +
                       std::to_string(i / t.order) + ", column " + std::to_string(i % t.order));
    t.op.push_back(static_cast<Element>(v));
  }
  std::string extra;
  if (in >> extra) throw GroupError("table file '" + path + "': trailing content");
  return t;
}

FiniteGroup load_table_group(const std::string& path) {
  return FiniteGroup::from_table(read_cayley_table(path), "table:" + path);
}

}  // namespace sumsetlab
