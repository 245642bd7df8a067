#include "sumsetlab/group.hpp"

#include <sstream>
#include <utility>

namespace sumsetlab {

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::kRange: return "range";
    case Axiom::kLatinSquare: return "latin_square";
    case Axiom::kIdentity: return "identity";
    case Axiom::kInverse: return "inverse";
    case Axiom::kAssociativity: return "associativity";
  }
  return "unknown";
}

bool ValidationReport::has(Axiom a) const {
  for (const auto& v : violations)
    if (v.axiom == a) return true;
  return false;
}

namespace {

std::optional<Element> find_identity(const CayleyTable& t) {
  const std::size_t n = t.order;
  for (Element e = 0; e < n; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = t.at(e, x) == x && t.at(x, e) == x;
    if (ok) return e;
  }
  return std::nullopt;
}

}  // namespace

ValidationReport validate_table(const CayleyTable& t, const ValidationOptions& opts) {
  ValidationReport report;
  const std::size_t n = t.order;
  if (n == 0 || t.op.size() != n * n) {
    report.violations.push_back({Axiom::kRange, "table must be a non-empty n x n array", {}});
    report.associativity_checked = false;
    return report;
  }
  for (std::size_t i = 0; i < t.op.size(); ++i) {
    if (t.op[i] >= n) {
      const auto a = static_cast<Element>(i / n), b = static_cast<Element>(i % n);
      std::ostringstream msg;
      msg << "entry op(" << a << "," << b << ") = " << t.op[i] << " is out of range";
      report.violations.push_back({Axiom::kRange, msg.str(), {a, b}});
      report.associativity_checked = false;
      return report;
    }
  }

  std::vector<char> seen(n);
  auto first_bad_line = [&](bool rows) -> std::optional<Element> {
    for (Element line = 0; line < n; ++line) {
      std::fill(seen.begin(), seen.end(), 0);
      for (Element i = 0; i < n; ++i) {
        const Element v = rows ? t.at(line, i) : t.at(i, line);
        if (seen[v]) return line;
        seen[v] = 1;
      }
    }
    return std::nullopt;
  };
  if (auto row = first_bad_line(true)) {
    report.violations.push_back(
        {Axiom::kLatinSquare, "row " + std::to_string(*row) + " is not a permutation", {*row}});
  } else if (auto col = first_bad_line(false)) {
    report.violations.push_back(
        {Axiom::kLatinSquare, "column " + std::to_string(*col) + " is not a permutation", {*col}});
  }

  const auto e = find_identity(t);
  if (!e) {
    report.violations.push_back({Axiom::kIdentity, "no two-sided identity element", {}});
  } else {
    for (Element a = 0; a < n; ++a) {
      bool found = false;
      for (Element b = 0; b < n && !found; ++b) found = t.at(a, b) == *e && t.at(b, a) == *e;
      if (!found) {
        report.violations.push_back(
            {Axiom::kInverse, "element " + std::to_string(a) + " has no two-sided inverse", {a}});
        break;
      }
    }
  }

  if (n > opts.associativity_cap) {
    report.associativity_checked = false;
    return report;
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      const Element ab = t.at(a, b);
      for (Element c = 0; c < n; ++c) {
        if (t.at(ab, c) != t.at(a, t.at(b, c))) {
          std::ostringstream msg;
          msg << "(" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c << ")";
          report.violations.push_back({Axiom::kAssociativity, msg.str(), {a, b, c}});
          return report;
        }
      }
    }
  return report;
}

ValidationReport validate_group(const FiniteGroup& g, const ValidationOptions& opts) {
  return validate_table(g.cayley_table(), opts);
}

FiniteGroup::FiniteGroup(std::size_t n, std::vector<Element> op, std::string label)
    : order_(n), op_(std::move(op)), inv_(n), label_(std::move(label)) {
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (mul(a, b) == 0) {
        inv_[a] = b;
        break;
      }
}

FiniteGroup FiniteGroup::from_table(CayleyTable table, std::string label, const ValidationOptions& opts) {
  if (table.order > kMaxGroupOrder)
    throw GroupError("group order " + std::to_string(table.order) + " exceeds the cap of " +
                     std::to_string(kMaxGroupOrder));
  const auto report = validate_table(table, opts);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw GroupError(std::string("invalid group table (") + axiom_name(v.axiom) + "): " + v.message);
  }
  const Element e = *find_identity(table);
  if (e != 0) {
    const std::size_t n = table.order;
    auto relabel = [e](Element x) -> Element { return x == e ? 0 : (x == 0 ? e : x); };
    std::vector<Element> op(n * n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) op[relabel(a) * n + relabel(b)] = relabel(table.at(a, b));
    table.op = std::move(op);
    label += " (relabel 0<->" + std::to_string(e) + ")";
  }
  return FiniteGroup(table.order, std::move(table.op), std::move(label));
}

std::size_t FiniteGroup::element_order(Element x) const {
  std::size_t m = 1;
  for (Element y = x; y != identity(); y = mul(y, x)) ++m;
  return m;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

Element FiniteGroup::power(Element x, std::size_t e) const {
  Element r = identity();
  for (std::size_t i = 0; i < e; ++i) r = mul(r, x);
  return r;
}

}  // namespace sumsetlab
