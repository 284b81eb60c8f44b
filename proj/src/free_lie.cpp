#include "ratdg/free_lie.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "ratdg/errors.hpp"

namespace ratdg {

namespace {

struct Pending {
  int weight;
  Word key;
  Word lyndon;  // the Lyndon word itself; for squares, the halved word
  bool square;
};

std::vector<Pending> plan_basis(const GeneratorSet& gens, int m) {
  std::vector<Pending> plan;
  for (const Word& w : lyndon_words(static_cast<int>(gens.size()), m)) {
    int wt = word_weight(gens, w);
    if (wt > m) continue;
    plan.push_back({wt, w, w, false});
    if (2 * wt <= m && is_odd(word_degree(gens, w))) plan.push_back({2 * wt, w + w, w, true});
  }
  std::sort(plan.begin(), plan.end(), [](const Pending& a, const Pending& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.key < b.key;
  });
  return plan;
}

}  // namespace

std::map<std::pair<int, int>, int> basis_counts(const GeneratorSet& gens, int m) {
  std::map<std::pair<int, int>, int> out;
  for (const auto& p : plan_basis(gens, m)) ++out[{p.weight, word_degree(gens, p.key)}];
  return out;
}

FreeLie::FreeLie(GeneratorSet gens, int m, int cap) : gens_(std::move(gens)), m_(m) {
  if (m < 1) throw std::invalid_argument("weight bound must be at least 1");
  if (gens_.size() > 200) throw TruncationTooLarge("too many generators");
  for (const auto& g : gens_)
    if (g.weight < 1) throw std::invalid_argument("generator weights must be positive");
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (gens_[i].name == gens_[j].name)
        throw std::invalid_argument("duplicate generator '" + gens_[i].name + "'");
  // counting first keeps the cap check cheap
  {
    auto counts = basis_counts(gens_, m);
    long total = 0;
    for (const auto& [k, c] : counts) total += c;
    if (total > cap)
      throw TruncationTooLarge("free Lie basis has " + std::to_string(total) +
                               " elements, cap is " + std::to_string(cap));
  }
  std::unordered_map<Word, int> lyndon_index;
  gen_index_.assign(gens_.size(), -1);
  for (const auto& p : plan_basis(gens_, m)) {
    Element e;
    e.weight = p.weight;
    e.key = p.key;
    e.degree = word_degree(gens_, p.key);
    if (p.square) {
      int l = lyndon_index.at(p.lyndon);
      e.left = e.right = l;
    } else if (p.key.size() == 1) {
      e.gen = static_cast<unsigned char>(p.key[0]);
    } else {
      auto [u, v] = standard_factorization(p.key);
      e.left = lyndon_index.at(u);
      e.right = lyndon_index.at(v);
    }
    int idx = static_cast<int>(elems_.size());
    if (e.gen >= 0) {
      e.label = gens_[e.gen].name;
      e.tensor = TensorPoly{{p.key, Q(1)}};
      gen_index_[e.gen] = idx;
    } else {
      const auto& L = elems_[e.left];
      const auto& R = elems_[e.right];
      e.label = "[" + L.label + "," + R.label + "]";
      e.tensor = commutator(gens_, L.tensor, R.tensor);
    }
    if (!p.square) lyndon_index[p.key] = idx;
    space_.add(e.label, e.degree);
    elems_.push_back(std::move(e));
  }
  // Per (weight, degree) cell: echelon of tensor images, tracked so that
  // coordinates can be read off.
  std::map<std::pair<int, int>, std::vector<int>> members;
  for (int i = 0; i < size(); ++i) members[{elems_[i].weight, elems_[i].degree}].push_back(i);
  for (const auto& [key, idxs] : members) {
    std::vector<Word> words;
    for (int i : idxs)
      for (const auto& [w, c] : elems_[i].tensor) words.push_back(w);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    for (const auto& w : words) column_.emplace(w, static_cast<int>(column_.size()));
    Cell& cell = cells_[key];
    for (int i : idxs) {
      std::vector<std::pair<int, Q>> terms;
      for (const auto& [w, c] : elems_[i].tensor) terms.emplace_back(column_.at(w), c);
      if (!cell.ech.insert(from_terms(std::move(terms)), i))
        throw std::logic_error("free Lie basis is not independent at " + elems_[i].label);
    }
    cell.ech.make_reduced();
  }
}

std::map<std::pair<int, int>, int> FreeLie::cell_dims() const {
  std::map<std::pair<int, int>, int> out;
  for (const auto& e : elems_) ++out[{e.weight, e.degree}];
  return out;
}

Vec FreeLie::from_tensor(const TensorPoly& p, bool check) const {
  std::map<std::pair<int, int>, std::vector<std::pair<int, Q>>> parts;
  for (const auto& [w, c] : p) {
    int wt = word_weight(gens_, w);
    if (wt > m_) continue;
    auto it = column_.find(w);
    if (it == column_.end()) {
      if (check) throw AxiomViolation("not a Lie element (word " + word_to_string(gens_, w) + ")");
      continue;
    }
    parts[{wt, word_degree(gens_, w)}].emplace_back(it->second, c);
  }
  Vec out;
  for (auto& [key, terms] : parts) {
    auto cit = cells_.find(key);
    if (cit == cells_.end()) {
      if (check) throw AxiomViolation("not a Lie element");
      continue;
    }
    Vec v = from_terms(std::move(terms));
    if (check && !cit->second.ech.reduce(v).empty())
      throw AxiomViolation("not a Lie element");
    axpy(out, 1, cit->second.ech.coordinates(v));
  }
  return out;
}

TensorPoly FreeLie::to_tensor(const Vec& v) const {
  TensorPoly out;
  for (const auto& [i, c] : v) add_into(out, elems_.at(i).tensor, c);
  return out;
}

Vec FreeLie::bracket_basis(int i, int j) const {
  const auto& a = elems_.at(i);
  const auto& b = elems_.at(j);
  if (a.weight + b.weight > m_) return {};
  if (i > j) {
    // [b,a] = -(-1)^{|a||b|} [a,b]
    return scaled(bracket_basis(j, i), -parity_sign(static_cast<long>(a.degree) * b.degree));
  }
  long long key = static_cast<long long>(i) * size() + j;
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Vec r = from_tensor(commutator(gens_, a.tensor, b.tensor), false);
  cache_.emplace(key, r);
  return r;
}

Vec FreeLie::bracket(const Vec& u, const Vec& v) const {
  Vec out;
  for (const auto& [i, a] : u)
    for (const auto& [j, b] : v) axpy(out, a * b, bracket_basis(i, j));
  return out;
}

std::vector<Vec> extend_lie_map(const FreeLie& L, const std::vector<Vec>& gen_images,
                                const std::function<Vec(const Vec&, const Vec&)>& bracket) {
  std::vector<Vec> img(L.size());
  for (int i = 0; i < L.size(); ++i) {
    const auto& e = L.element(i);
    img[i] = e.gen >= 0 ? gen_images.at(e.gen) : bracket(img[e.left], img[e.right]);
  }
  return img;
}

LieQuotient::LieQuotient(std::shared_ptr<const FreeLie> lie, const std::vector<Vec>& relations,
                         const std::function<Vec(const Vec&)>& d)
    : lie_(std::move(lie)) {
  std::deque<Vec> queue(relations.begin(), relations.end());
  std::vector<Vec> gens;
  for (size_t k = 0; k < lie_->generators().size(); ++k) {
    int gi = lie_->generator_index(static_cast<int>(k));
    if (gi >= 0) gens.push_back(unit_vec(gi));
  }
  while (!queue.empty()) {
    Vec r = ideal_.reduce(std::move(queue.front()));
    queue.pop_front();
    if (r.empty()) continue;
    ideal_.insert(r);
    for (const auto& g : gens) {
      Vec b = lie_->bracket(g, r);
      if (!b.empty()) queue.push_back(std::move(b));
    }
    if (d) {
      Vec dr = d(r);
      if (!dr.empty()) queue.push_back(std::move(dr));
    }
  }
  ideal_.make_reduced();
  position_.assign(lie_->size(), -1);
  for (int i = 0; i < lie_->size(); ++i) {
    if (ideal_.rows().count(i)) continue;
    position_[i] = static_cast<int>(basis_.size());
    basis_.push_back(i);
  }
}

Vec LieQuotient::project(const Vec& free_vec) const {
  Vec r = ideal_.reduce(free_vec);
  Vec out;
  out.reserve(r.size());
  for (auto& [i, c] : r) {
    int q = position_.at(i);
    if (q < 0) throw std::logic_error("reduction left a pivot entry");
    out.emplace_back(q, c);
  }
  return out;
}

Vec LieQuotient::lift(const Vec& q) const {
  Vec out;
  for (const auto& [i, c] : q) out.emplace_back(basis_.at(i), c);
  return out;
}

}  // namespace ratdg
