#include "relex/amalgamation.h"

#include <map>

#include "relex/embeddings.h"
#include "relex/errors.h"
#include "relex/isomorphism.h"
#include "tuple_iter.h"

namespace relex {

namespace {

Structure delete_point(const Structure& s, int p) {
  std::vector<int> keep;
  keep.reserve(static_cast<std::size_t>(s.size()));
  for (int x = 1; x <= s.size(); ++x) {
    if (x != p) keep.push_back(x);
  }
  return pullback(s, keep);
}

// Glues faces that are already known to be compatible.
PartialStructure glue_unchecked(const std::vector<const Structure*>& faces) {
  const int n = static_cast<int>(faces.size());
  const Signature& sig = faces.front()->signature();
  PartialStructure out(sig, n);
  std::vector<int> local;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const int arity = sig[r].arity;
    std::size_t rank = 0;
    detail::for_each_tuple(n, arity, [&](std::span<const int> t) {
      const std::size_t here = rank++;
      int missing = 0;
      for (int i = 1; i <= n && missing == 0; ++i) {
        bool present = false;
        for (int x : t) present = present || x == i;
        if (!present) missing = i;
      }
      if (missing == 0) return;
      local.assign(t.begin(), t.end());
      for (int& x : local) x = face_index(missing, x);
      const Structure& face = *faces[static_cast<std::size_t>(missing - 1)];
      out.fix(r, here, face.bit(r, tuple_rank(n - 1, local)));
    });
  }
  return out;
}

void validate_family(const Family& family) {
  if (family.empty()) throw PreconditionError("a family needs at least one face");
  const int n = static_cast<int>(family.size());
  for (const auto& face : family) {
    if (!(face.signature() == family.front().signature())) {
      throw SignatureMismatch("faces of a family must share one signature");
    }
    if (face.size() != n - 1) {
      throw PreconditionError("each face of a family of " + std::to_string(n) +
                              " must have " + std::to_string(n - 1) + " elements");
    }
  }
}

}  // namespace

bool pairwise_compatible(const Family& family) {
  validate_family(family);
  const int n = static_cast<int>(family.size());
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto a = delete_point(family[static_cast<std::size_t>(i - 1)], face_index(i, j));
      const auto b = delete_point(family[static_cast<std::size_t>(j - 1)], face_index(j, i));
      if (!(a == b)) return false;
    }
  }
  return true;
}

PartialStructure glue_family(const Family& family) {
  if (!pairwise_compatible(family)) {
    throw PreconditionError("family is not pairwise compatible");
  }
  std::vector<const Structure*> faces;
  for (const auto& f : family) faces.push_back(&f);
  return glue_unchecked(faces);
}

Family faces_of(const Structure& m) {
  Family out;
  for (int i = 1; i <= m.size(); ++i) out.push_back(delete_point(m, i));
  return out;
}

bool families_isomorphic(const Family& a, const Family& b) {
  if (a.size() != b.size()) return false;
  // Glued boundaries leave exactly the full-range tuples undecided, and every
  // permutation preserves that set, so comparing the decided parts suffices.
  return is_isomorphic(glue_family(a).values(), glue_family(b).values()).has_value();
}

NdapReport check_ndap(const FiniteClass& k, int n, int cap) {
  if (n < 1) throw PreconditionError("n-DAP is defined for n >= 1");
  if (n > cap) throw CapExceeded(n, cap);
  NdapReport report;
  report.n = n;

  const std::vector<Structure> age = k.enumerate(n - 1);
  const std::size_t m = age.size();

  // del[a][p]: id of age[a] with local point p removed.
  std::map<std::vector<std::uint8_t>, int> ids;
  std::vector<std::vector<int>> del(m, std::vector<int>(static_cast<std::size_t>(n), -1));
  for (std::size_t a = 0; a < m; ++a) {
    for (int p = 1; p <= n - 1; ++p) {
      auto key = delete_point(age[a], p).encoding();
      auto [it, inserted] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
      del[a][static_cast<std::size_t>(p)] = it->second;
    }
  }
  // Faces after the first are drawn from the bucket matching face 1.
  std::map<int, std::vector<std::size_t>> by_first;
  if (n >= 2) {
    for (std::size_t a = 0; a < m; ++a) by_first[del[a][1]].push_back(a);
  }
  std::vector<std::size_t> all(m);
  for (std::size_t a = 0; a < m; ++a) all[a] = a;

  std::vector<std::size_t> choice(static_cast<std::size_t>(n) + 1, 0);
  bool stop = false;
  auto rec = [&](auto&& self, int i) -> void {
    if (stop) return;
    if (i > n) {
      std::vector<const Structure*> faces;
      for (int f = 1; f <= n; ++f) faces.push_back(&age[choice[static_cast<std::size_t>(f)]]);
      auto found = k.completions(glue_unchecked(faces), 1);
      ++report.families_checked;
      if (found.empty()) {
        report.holds = false;
        Family witness;
        for (const Structure* f : faces) witness.push_back(*f);
        report.witness_family = std::move(witness);
        stop = true;
      } else if (!report.amalgam) {
        report.amalgam = std::move(found.front());
      }
      return;
    }
    const std::vector<std::size_t>* candidates = &all;
    if (i >= 2) {
      auto it = by_first.find(del[choice[1]][static_cast<std::size_t>(i - 1)]);
      if (it == by_first.end()) return;
      candidates = &it->second;
    }
    for (std::size_t a : *candidates) {
      bool ok = true;
      for (int j = 2; j < i && ok; ++j) {
        ok = del[choice[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i - 1)] ==
             del[a][static_cast<std::size_t>(j)];
      }
      if (!ok) continue;
      choice[static_cast<std::size_t>(i)] = a;
      self(self, i + 1);
      if (stop) return;
    }
  };
  rec(rec, 1);
  return report;
}

AmalgamSet amalgams(const PartialStructure& boundary, const FiniteClass& k) {
  AmalgamSet out;
  out.all = k.completions(boundary);
  std::map<Structure, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < out.all.size(); ++i) {
    classes[canonical_form(out.all[i])].push_back(i);
  }
  for (auto& [form, members] : classes) {
    out.canonical_forms.push_back(form);
    out.representatives.push_back(out.all[members.front()]);
    out.members.push_back(std::move(members));
  }
  return out;
}

AmalgamSet amalgams(const Family& family, const FiniteClass& k) {
  validate_family(family);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!k.contains(family[i])) {
      throw PreconditionError("face " + std::to_string(i + 1) + " is not a member of " +
                              k.name());
    }
  }
  return amalgams(glue_family(family), k);
}

namespace {

std::vector<std::vector<Structure>> ages_up_to(const FiniteClass& k, int bound) {
  std::vector<std::vector<Structure>> ages;
  for (int t = 0; t <= bound; ++t) ages.push_back(k.enumerate(t));
  return ages;
}

template <typename Fn>
void for_each_subset(int t, int s, Fn&& fn) {
  std::vector<int> subset;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(subset.size()) == s) {
      fn(subset);
      return;
    }
    for (int x = next; x <= t; ++x) {
      subset.push_back(x);
      self(self, x + 1);
      subset.pop_back();
    }
  };
  rec(rec, 1);
}

// Partial structure on [u] with `a` on [1, a.size()] and `b` placed through
// `place` (element y of b goes to place[y-1]). Returns nullopt when the two
// disagree on a shared tuple.
std::optional<PartialStructure> place_pair(const Structure& a, const Structure& b,
                                           const std::vector<int>& place, int u) {
  const auto& sig = a.signature();
  PartialStructure out(sig, u);
  std::vector<int> back(static_cast<std::size_t>(u) + 1, 0);
  for (std::size_t y = 0; y < place.size(); ++y) back[static_cast<std::size_t>(place[y])] = static_cast<int>(y) + 1;
  const int ta = a.size();
  const int tb = b.size();
  bool clash = false;
  std::vector<int> local;
  for (std::size_t r = 0; r < sig.size() && !clash; ++r) {
    std::size_t rank = 0;
    detail::for_each_tuple(u, sig[r].arity, [&](std::span<const int> t) {
      const std::size_t here = rank++;
      if (clash) return;
      bool in_a = true;
      bool in_b = true;
      for (int x : t) {
        in_a = in_a && x <= ta;
        in_b = in_b && back[static_cast<std::size_t>(x)] != 0;
      }
      std::optional<bool> va;
      std::optional<bool> vb;
      if (in_a) va = a.bit(r, tuple_rank(ta, t));
      if (in_b) {
        local.assign(t.begin(), t.end());
        for (int& x : local) x = back[static_cast<std::size_t>(x)];
        vb = b.bit(r, tuple_rank(tb, local));
      }
      if (va && vb && *va != *vb) {
        clash = true;
        return;
      }
      if (va) {
        out.fix(r, here, *va);
      } else if (vb) {
        out.fix(r, here, *vb);
      }
    });
  }
  if (clash) return std::nullopt;
  return out;
}

}  // namespace

DapReport check_dap(const FiniteClass& k, int bound, int cap) {
  if (bound > cap) throw CapExceeded(bound, cap);
  if (bound < 0) throw PreconditionError("bound must be >= 0");
  DapReport report;
  report.bound = bound;

  if (cap >= 2) {
    auto nd = check_ndap(k, 2, cap);
    report.ndap2_holds = nd.holds;
    report.ndap2_witness = nd.witness_family;
  }

  const auto ages = ages_up_to(k, bound);
  bool stop = false;
  for (int t = 0; t <= bound && !stop; ++t) {
    for (const auto& big : ages[static_cast<std::size_t>(t)]) {
      if (stop) break;
      for (int s = 0; s <= t && !stop; ++s) {
        for_each_subset(t, s, [&](const std::vector<int>& shared) {
          if (stop) return;
          const Structure core = pullback(big, shared);
          for (int tp = s; tp <= bound && !stop; ++tp) {
            for (const auto& other : ages[static_cast<std::size_t>(tp)]) {
              if (stop) break;
              for (const auto& psi : enumerate_embeddings(core, other).maps) {
                const int u = t + tp - s;
                std::vector<int> place(static_cast<std::size_t>(tp), 0);
                for (std::size_t q = 0; q < shared.size(); ++q) {
                  place[static_cast<std::size_t>(psi.images()[q] - 1)] = shared[q];
                }
                int fresh = t;
                for (int& p : place) {
                  if (p == 0) p = ++fresh;
                }
                auto partial = place_pair(big, other, place, u);
                ++report.configurations_checked;
                if (!partial || k.completions(*partial, 1).empty()) {
                  report.overlap_holds = false;
                  report.overlap_witness = DapWitness{big, other, shared, psi};
                  stop = true;
                  break;
                }
              }
            }
          }
        });
      }
    }
  }
  report.agree = report.ndap2_holds == report.overlap_holds;
  report.holds = report.ndap2_holds && report.overlap_holds;
  return report;
}

JepReport check_jep(const FiniteClass& k, int bound, int cap) {
  if (bound > cap) throw CapExceeded(bound, cap);
  JepReport report;
  report.bound = bound;
  const auto ages = ages_up_to(k, bound);

  for (int t = 1; t <= bound; ++t) {
    for (int tp = t; tp <= bound; ++tp) {
      const auto& left = ages[static_cast<std::size_t>(t)];
      const auto& right = ages[static_cast<std::size_t>(tp)];
      for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = (t == tp ? i : 0); j < right.size(); ++j) {
          ++report.pairs_checked;
          bool found = false;
          for (int u = tp; u <= t + tp && !found; ++u) {
            std::vector<int> place(static_cast<std::size_t>(tp), 0);
            std::vector<char> used(static_cast<std::size_t>(u) + 1, 0);
            auto rec = [&](auto&& self, int y) -> void {
              if (found) return;
              if (y > tp) {
                for (int x = t + 1; x <= u; ++x) {
                  if (!used[static_cast<std::size_t>(x)]) return;
                }
                auto partial = place_pair(left[i], right[j], place, u);
                if (partial && !k.completions(*partial, 1).empty()) found = true;
                return;
              }
              for (int x = 1; x <= u; ++x) {
                if (used[static_cast<std::size_t>(x)]) continue;
                used[static_cast<std::size_t>(x)] = 1;
                place[static_cast<std::size_t>(y - 1)] = x;
                self(self, y + 1);
                used[static_cast<std::size_t>(x)] = 0;
              }
            };
            rec(rec, 1);
          }
          if (!found) {
            report.holds = false;
            report.failing_pair = std::make_pair(left[i], right[j]);
            return report;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace relex
