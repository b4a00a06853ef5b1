#include "reclab/ramsey.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "reclab/checked.hpp"
#include "reclab/setgen.hpp"

namespace reclab {

std::optional<Representation> unique_representation(const SequenceSpec& p,
                                                    std::int64_t m) {
  if (!p.is_super_lacunary())
    throw std::invalid_argument("unique_representation needs a super-lacunary sequence");
  auto terms = p.terms();
  Representation rep;
  rep.value = m;
  std::int64_t rest = m;
  for (int i = static_cast<int>(terms.size()) - 1; i >= 0 && rest > 0; --i) {
    if (terms[static_cast<std::size_t>(i)] <= rest) {
      rest -= terms[static_cast<std::size_t>(i)];
      rep.indices.push_back(i);
    }
  }
  if (rest != 0) return std::nullopt;
  std::reverse(rep.indices.begin(), rep.indices.end());
  return rep;
}

namespace {

// 1-based position parity: index 0 is p_1 (odd position).
enum class Parity : std::uint8_t { AllOdd, AllEven, Mixed };

Parity index_parity(const std::vector<int>& indices) {
  bool odd = false, even = false;
  for (int i : indices) {
    if (i % 2 == 0) odd = true;   // 0-based even == 1-based odd
    else even = true;
  }
  if (odd && even) return Parity::Mixed;
  return odd ? Parity::AllOdd : Parity::AllEven;
}

std::string parity_label(Parity p) {
  switch (p) {
    case Parity::AllOdd: return "B1";
    case Parity::AllEven: return "B2";
    case Parity::Mixed: return "B0";
  }
  return "?";
}

// Definitional classifier: membership in SG_1 of the odd/even 1-based
// subsequences. Used to spot-check the representation-parity shortcut.
std::string definitional_label(const SequenceSpec& p, std::int64_t value) {
  auto terms = p.terms();
  std::vector<std::int64_t> odd_terms, even_terms;
  for (std::size_t i = 0; i < terms.size(); ++i)
    (i % 2 == 0 ? odd_terms : even_terms).push_back(terms[i]);
  if (!odd_terms.empty() &&
      generate_sg(SequenceSpec::explicit_terms(odd_terms), 1).contains(value))
    return "B1";
  if (!even_terms.empty() &&
      generate_sg(SequenceSpec::explicit_terms(even_terms), 1).contains(value))
    return "B2";
  return "B0";
}

}  // namespace

LabeledWindow partition_sg2(const SequenceSpec& p, std::int64_t lo, std::int64_t hi,
                            std::uint64_t spot_check_seed) {
  if (!p.is_super_lacunary())
    throw std::invalid_argument("partition_sg2 needs a super-lacunary sequence");
  IntegerWindow sg2 = generate_sg(p, 2).restricted(lo, hi);
  LabeledWindow out;
  out.window = sg2;
  out.labels.reserve(sg2.size());
  for (std::int64_t v : sg2.members()) {
    auto rep = unique_representation(p, v);
    if (!rep) throw std::logic_error("SG_2 element without representation");
    out.labels.push_back(parity_label(index_parity(rep->indices)));
  }
  // spot-check ~1% of elements against the definitional classifier
  if (!sg2.empty()) {
    std::mt19937_64 rng(spot_check_seed);
    std::size_t samples = std::max<std::size_t>(1, sg2.size() / 100);
    std::uniform_int_distribution<std::size_t> pick(0, sg2.size() - 1);
    for (std::size_t s = 0; s < samples; ++s) {
      std::size_t i = pick(rng);
      if (definitional_label(p, sg2.members()[i]) != out.labels[i])
        throw std::logic_error("parity classifier disagrees with the definition");
    }
  }
  return out;
}

TripleSearchResult find_monochromatic_triple(const LabeledWindow& lw,
                                             std::int64_t max_nodes) {
  TripleSearchResult out;
  const auto& members = lw.window.members();
  std::int64_t hi = lw.window.hi();
  std::int64_t lo = lw.window.lo();

  // label ids + per-class member lists + value -> label lookup
  std::map<std::string, int> label_ids;
  for (const auto& l : lw.labels) label_ids.emplace(l, 0);
  int next_id = 0;
  for (auto& [l, id] : label_ids) id = next_id++;
  std::vector<std::vector<std::int64_t>> classes(static_cast<std::size_t>(next_id));
  std::unordered_map<std::int64_t, int> label_of;
  label_of.reserve(members.size() * 2);
  for (std::size_t i = 0; i < members.size(); ++i) {
    int id = label_ids[lw.labels[i]];
    classes[static_cast<std::size_t>(id)].push_back(members[i]);
    label_of.emplace(members[i], id);
  }
  std::vector<std::string> label_names(static_cast<std::size_t>(next_id));
  for (auto& [l, id] : label_ids) label_names[static_cast<std::size_t>(id)] = l;

  auto in_class = [&](std::int64_t v, int id) {
    auto it = label_of.find(v);
    return it != label_of.end() && it->second == id;
  };

  std::int64_t nodes = 0;
  // ascending lexicographic over (a1, a2, a3); classes share the global order
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::int64_t a1 = members[i];
    int id = label_of[a1];
    const auto& cls = classes[static_cast<std::size_t>(id)];
    auto a2_begin = std::upper_bound(cls.begin(), cls.end(), a1);
    for (auto it2 = a2_begin; it2 != cls.end(); ++it2) {
      std::int64_t a2 = *it2;
      std::int64_t a12;
      bool a12_inside = !__builtin_add_overflow(a1, a2, &a12) && a12 >= lo && a12 <= hi;
      if (a12_inside && !in_class(a12, id)) {
        // every triple with this (a1, a2) fails on a1+a2; decided in bulk
        out.checked += static_cast<std::int64_t>(cls.end() - (it2 + 1));
        continue;
      }
      for (auto it3 = it2 + 1; it3 != cls.end(); ++it3) {
        std::int64_t a3 = *it3;
        if (++nodes > max_nodes) {
          out.node_limited = true;
          return out;
        }
        std::int64_t a13, a23;
        bool in13 = !__builtin_add_overflow(a1, a3, &a13) && a13 >= lo && a13 <= hi;
        bool in23 = !__builtin_add_overflow(a2, a3, &a23) && a23 >= lo && a23 <= hi;
        if (!a12_inside || !in13 || !in23) {
          ++out.truncated;
          continue;
        }
        ++out.checked;
        if (!in_class(a13, id) || !in_class(a23, id)) continue;
        if (a3 == a12) {
          ++out.degenerate;
          continue;
        }
        out.triple = MonochromaticTriple{a1, a2, a3, label_names[static_cast<std::size_t>(id)]};
        return out;
      }
    }
  }
  return out;
}

LabelFn label_single_class() {
  return [](std::int64_t) { return std::string("all"); };
}

LabelFn label_value_parity() {
  return [](std::int64_t v) { return std::string(mod_floor(v, 2) == 0 ? "even" : "odd"); };
}

LabelFn label_mod_class(std::int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
  return [modulus](std::int64_t v) { return "r" + std::to_string(mod_floor(v, modulus)); };
}

LabeledWindow label_window(const IntegerWindow& w, const LabelFn& fn) {
  LabeledWindow out;
  out.window = w;
  out.labels.reserve(w.size());
  for (std::int64_t v : w.members()) out.labels.push_back(fn(v));
  return out;
}

RamseyExperimentResult ramsey_experiment(const SetDescriptor& s, const LabelFn& fn,
                                         std::int64_t lo, std::int64_t hi,
                                         int witness_fs_length,
                                         const SearchBudget& budget) {
  IntegerWindow w = eval_window(s, lo, hi);
  LabeledWindow lw = label_window(w, fn);

  std::map<std::string, std::vector<std::int64_t>> classes;
  for (std::size_t i = 0; i < w.size(); ++i)
    classes[lw.labels[i]].push_back(w.members()[i]);

  RamseyExperimentResult out;
  for (const auto& [label, vals] : classes) {
    RamseyClassOutcome oc;
    oc.label = label;
    oc.class_size = static_cast<std::int64_t>(vals.size());
    if (witness_fs_length == 0) {
      LabeledWindow one;
      one.window = IntegerWindow::from_sorted(lo, hi, vals);
      one.labels.assign(vals.size(), label);
      oc.triple = find_monochromatic_triple(one, budget.max_nodes);
    } else {
      IntegerWindow cw = IntegerWindow::from_sorted(lo, hi, vals);
      oc.fs = find_fs_witness(cw, witness_fs_length, budget);
    }
    out.classes.push_back(std::move(oc));
  }
  return out;
}

}  // namespace reclab
