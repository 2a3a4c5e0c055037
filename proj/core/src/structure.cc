#include "relex/structure.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "relex/errors.h"
#include "tuple_iter.h"

namespace relex {

namespace {

const std::shared_ptr<const std::vector<RelationSymbol>>& empty_relations() {
  static const auto kEmpty = std::make_shared<const std::vector<RelationSymbol>>();
  return kEmpty;
}

}  // namespace

Signature::Signature() : relations_(empty_relations()) {}

Signature::Signature(std::vector<RelationSymbol> relations) {
  std::set<std::string> seen;
  for (const auto& r : relations) {
    if (r.name.empty()) throw PreconditionError("relation name must be non-empty");
    if (r.arity < 1) {
      throw PreconditionError("relation " + r.name + " has arity < 1");
    }
    if (!seen.insert(r.name).second) {
      throw PreconditionError("duplicate relation name " + r.name);
    }
  }
  relations_ = std::make_shared<const std::vector<RelationSymbol>>(std::move(relations));
}

Signature::Signature(std::initializer_list<RelationSymbol> relations)
    : Signature(std::vector<RelationSymbol>(relations)) {}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < relations_->size(); ++i) {
    if ((*relations_)[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw PreconditionError("unknown relation symbol " + std::string(name));
  return *i;
}

int Signature::max_arity() const {
  int k = 0;
  for (const auto& r : *relations_) k = std::max(k, r.arity);
  return k;
}

bool operator==(const Signature& a, const Signature& b) {
  return a.relations_ == b.relations_ || *a.relations_ == *b.relations_;
}

std::string Signature::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ", ";
    out += (*relations_)[i].name + "/" + std::to_string((*relations_)[i].arity);
  }
  return out + "}";
}

std::size_t tuple_space(int n, int arity) {
  std::size_t s = 1;
  for (int i = 0; i < arity; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

std::size_t tuple_rank(int n, std::span<const int> tuple) {
  std::size_t r = 0;
  for (int x : tuple) r = r * static_cast<std::size_t>(n) + static_cast<std::size_t>(x - 1);
  return r;
}

Tuple tuple_at(int n, int arity, std::size_t rank) {
  Tuple t(static_cast<std::size_t>(arity));
  for (int i = arity - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<int>(rank % static_cast<std::size_t>(n)) + 1;
    rank /= static_cast<std::size_t>(n);
  }
  return t;
}

Structure::Structure() : offsets_{0} {}

Structure::Structure(Signature signature, int universe_size)
    : signature_(std::move(signature)), n_(universe_size) {
  if (n_ < 0) throw PreconditionError("universe size must be >= 0");
  offsets_.reserve(signature_.size() + 1);
  std::size_t total = 0;
  for (const auto& r : signature_.relations()) {
    offsets_.push_back(total);
    total += tuple_space(n_, r.arity);
  }
  offsets_.push_back(total);
  bits_.assign(total, 0);
}

Structure Structure::from_tuples(Signature signature, int universe_size,
                                 const std::vector<std::vector<Tuple>>& tuples) {
  if (tuples.size() != signature.size()) {
    throw PreconditionError("expected one tuple list per relation symbol");
  }
  Structure s(std::move(signature), universe_size);
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    for (const auto& t : tuples[r]) s.set(r, t);
  }
  return s;
}

namespace {

void check_tuple(const Signature& sig, int n, std::size_t relation, std::span<const int> tuple) {
  if (relation >= sig.size()) throw PreconditionError("relation index out of range");
  if (static_cast<int>(tuple.size()) != sig[relation].arity) {
    throw PreconditionError("tuple length " + std::to_string(tuple.size()) +
                            " does not match arity of " + sig[relation].name);
  }
  for (int x : tuple) {
    if (x < 1 || x > n) {
      throw PreconditionError("tuple component " + std::to_string(x) + " outside [1," +
                              std::to_string(n) + "]");
    }
  }
}

}  // namespace

bool Structure::holds(std::size_t relation, std::span<const int> tuple) const {
  check_tuple(signature_, n_, relation, tuple);
  return bit(relation, tuple_rank(n_, tuple));
}

void Structure::set(std::size_t relation, std::span<const int> tuple, bool value) {
  check_tuple(signature_, n_, relation, tuple);
  set_bit(relation, tuple_rank(n_, tuple), value);
}

std::size_t Structure::slot_count(std::size_t relation) const {
  return offsets_[relation + 1] - offsets_[relation];
}

std::vector<Tuple> Structure::tuples(std::size_t relation) const {
  std::vector<Tuple> out;
  const int arity = signature_[relation].arity;
  for (std::size_t i = 0; i < slot_count(relation); ++i) {
    if (bit(relation, i)) out.push_back(tuple_at(n_, arity, i));
  }
  return out;
}

std::size_t Structure::tuple_count(std::size_t relation) const {
  return static_cast<std::size_t>(std::count(bits_.begin() + static_cast<std::ptrdiff_t>(offsets_[relation]),
                                             bits_.begin() + static_cast<std::ptrdiff_t>(offsets_[relation + 1]),
                                             std::uint8_t{1}));
}

std::size_t Structure::total_tuple_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool operator==(const Structure& a, const Structure& b) {
  return a.n_ == b.n_ && a.bits_ == b.bits_ && a.signature_ == b.signature_;
}

std::strong_ordering operator<=>(const Structure& a, const Structure& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
  if (a.signature_ == b.signature_) return std::strong_ordering::equal;
  return a.signature_.to_string() <=> b.signature_.to_string();
}

std::string Structure::to_string() const {
  std::ostringstream os;
  os << "n=" << n_;
  for (std::size_t r = 0; r < signature_.size(); ++r) {
    os << ' ' << signature_[r].name << '{';
    bool first = true;
    for (const auto& t : tuples(r)) {
      if (!first) os << ',';
      first = false;
      os << '(';
      for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
      os << ')';
    }
    os << '}';
  }
  return os.str();
}

Injection::Injection(std::vector<int> domain, std::vector<int> images) {
  if (domain.size() != images.size()) {
    throw PreconditionError("injection domain and image lists differ in length");
  }
  std::vector<std::size_t> order(domain.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return domain[a] < domain[b]; });
  domain_.reserve(domain.size());
  images_.reserve(images.size());
  for (std::size_t i : order) {
    domain_.push_back(domain[i]);
    images_.push_back(images[i]);
  }
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i] < 1 || images_[i] < 1) {
      throw PreconditionError("injections act on positive integers");
    }
    if (i > 0 && domain_[i] == domain_[i - 1]) {
      throw PreconditionError("injection domain has a repeated element");
    }
  }
  auto sorted = image_set();
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PreconditionError("map is not injective");
  }
}

Injection Injection::from_images(std::vector<int> images) {
  std::vector<int> domain(images.size());
  std::iota(domain.begin(), domain.end(), 1);
  return Injection(std::move(domain), std::move(images));
}

Injection Injection::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Injection(v, v);
}

Injection Injection::inclusion(std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  return Injection(subset, subset);
}

bool Injection::contains(int x) const {
  return std::binary_search(domain_.begin(), domain_.end(), x);
}

int Injection::operator()(int x) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
  if (it == domain_.end() || *it != x) {
    throw PreconditionError(std::to_string(x) + " is outside the injection's domain");
  }
  return images_[static_cast<std::size_t>(it - domain_.begin())];
}

Injection Injection::compose(const Injection& inner) const {
  std::vector<int> images;
  images.reserve(inner.size());
  for (int y : inner.images()) images.push_back((*this)(y));
  return Injection(inner.domain(), std::move(images));
}

Injection Injection::inverse() const { return Injection(images_, domain_); }

std::vector<int> Injection::image_set() const {
  std::vector<int> s = images_;
  std::sort(s.begin(), s.end());
  return s;
}

Structure pullback(const Structure& m, std::span<const int> images) {
  const int n = m.size();
  for (int y : images) {
    if (y < 1 || y > n) {
      throw PreconditionError("image element " + std::to_string(y) + " outside [1," +
                              std::to_string(n) + "]");
    }
  }
  const int k = static_cast<int>(images.size());
  Structure out(m.signature(), k);
  const auto& sig = m.signature();
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const int arity = sig[r].arity;
    std::size_t rank = 0;
    detail::for_each_tuple(k, arity, [&](std::span<const int> t) {
      std::size_t src = 0;
      for (int x : t) src = src * static_cast<std::size_t>(n) + static_cast<std::size_t>(images[static_cast<std::size_t>(x - 1)] - 1);
      out.set_bit(r, rank++, m.bit(r, src));
    });
  }
  return out;
}

Relabeled relabel(const Structure& m, const Injection& phi) {
  for (int y : phi.images()) {
    if (y < 1 || y > m.size()) {
      throw PreconditionError("relabel: image " + std::to_string(y) +
                              " lies outside the universe [1," + std::to_string(m.size()) + "]");
    }
  }
  return Relabeled{pullback(m, phi.images()), phi.domain()};
}

Structure restrict(const Structure& m, std::span<const int> subset) {
  std::vector<int> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int x : s) {
    if (x < 1 || x > m.size()) {
      throw PreconditionError("restrict: " + std::to_string(x) + " is not in [1," +
                              std::to_string(m.size()) + "]");
    }
  }
  return pullback(m, s);
}

Structure restrict(const Structure& m, std::initializer_list<int> subset) {
  return restrict(m, std::span<const int>(subset.begin(), subset.size()));
}

}  // namespace relex
