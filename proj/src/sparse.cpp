#include "ratdg/sparse.hpp"

#include <algorithm>

namespace ratdg {

Q coeff(const Vec& v, int idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx,
                             [](const auto& t, int i) { return t.first < i; });
  if (it != v.end() && it->first == idx) return it->second;
  return 0;
}

void axpy(Vec& y, const Q& a, const Vec& x) {
  if (ratdg::is_zero(a) || x.empty()) return;
  Vec out;
  out.reserve(y.size() + x.size());
  size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, a * x[j].second);
      ++j;
    } else {
      Q s = y[i].second + a * x[j].second;
      if (!ratdg::is_zero(s)) out.emplace_back(y[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  axpy(r, 1, b);
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r = a;
  axpy(r, -1, b);
  return r;
}

Vec scaled(const Vec& v, const Q& a) {
  if (ratdg::is_zero(a)) return {};
  Vec r = v;
  for (auto& t : r) t.second *= a;
  return r;
}

Vec unit_vec(int idx, const Q& c) {
  if (ratdg::is_zero(c)) return {};
  return Vec{{idx, c}};
}

Vec from_terms(std::vector<std::pair<int, Q>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Vec out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (ratdg::is_zero(out.back().second)) out.pop_back();
    } else if (!ratdg::is_zero(t.second)) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

bool is_zero(const Vec& v) { return v.empty(); }

Vec Matrix::apply(const Vec& x) const {
  Vec y;
  for (const auto& [j, c] : x) axpy(y, c, col.at(j));
  return y;
}

Matrix Matrix::transpose() const {
  Matrix t(cols, rows);
  for (int j = 0; j < cols; ++j)
    for (const auto& [i, c] : col[j]) t.col[i].emplace_back(j, c);
  return t;
}

Matrix Matrix::compose(const Matrix& rhs) const {
  Matrix r(rows, rhs.cols);
  for (int j = 0; j < rhs.cols; ++j) r.col[j] = apply(rhs.col[j]);
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& c : col)
    if (!c.empty()) return false;
  return true;
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.col[i] = unit_vec(i);
  return m;
}

Vec Echelon::reduce(Vec v, Vec* combo) const {
  size_t pos = 0;
  while (pos < v.size()) {
    auto it = rows_.find(v[pos].first);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    int pivot = it->first;
    Q f = v[pos].second;
    axpy(v, -f, it->second);
    if (combo && track_) axpy(*combo, f, combos_.at(pivot));
    // entries before the pivot are untouched; resume right after it
    pos = std::lower_bound(v.begin(), v.end(), pivot + 1,
                           [](const auto& t, int i) { return t.first < i; }) -
          v.begin();
  }
  return v;
}

bool Echelon::insert(Vec v, int id) {
  Vec combo;
  Vec r = reduce(std::move(v), track_ ? &combo : nullptr);
  if (r.empty()) return false;
  Q lead = r.front().second;
  int pivot = r.front().first;
  Q inv = 1 / lead;
  for (auto& t : r) t.second *= inv;
  if (track_) {
    Vec c = unit_vec(id);
    axpy(c, -1, combo);
    for (auto& t : c) t.second *= inv;
    combos_[pivot] = std::move(c);
  }
  // An older row may carry a nonzero entry at this new pivot.
  for (const auto& [p, row] : rows_) {
    if (p >= pivot) break;
    if (!ratdg::is_zero(coeff(row, pivot))) {
      reduced_ = false;
      break;
    }
  }
  rows_.emplace(pivot, std::move(r));
  return true;
}

void Echelon::make_reduced() {
  if (reduced_) return;
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    Vec& row = it->second;
    int pivot = it->first;
    size_t pos = 1;
    while (pos < row.size()) {
      auto jt = rows_.find(row[pos].first);
      if (jt == rows_.end() || jt->first == pivot) {
        ++pos;
        continue;
      }
      int p2 = jt->first;
      Q f = row[pos].second;
      axpy(row, -f, jt->second);
      if (track_) axpy(combos_[pivot], -f, combos_.at(p2));
      pos = std::lower_bound(row.begin(), row.end(), p2 + 1,
                             [](const auto& t, int i) { return t.first < i; }) -
            row.begin();
    }
  }
  reduced_ = true;
}

Vec Echelon::coordinates(const Vec& v) const {
  Vec c;
  for (const auto& [idx, val] : v) {
    auto it = combos_.find(idx);
    if (it != combos_.end()) axpy(c, val, it->second);
  }
  return c;
}

int rank(const Matrix& m) {
  Echelon e;
  for (const auto& c : m.col) e.insert(c);
  return e.rank();
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  Matrix t = m.transpose();
  Echelon e;
  for (const auto& r : t.col) e.insert(r);
  e.make_reduced();
  std::vector<bool> is_pivot(m.cols, false);
  for (const auto& [p, row] : e.rows()) is_pivot[p] = true;
  std::vector<Vec> out;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::pair<int, Q>> terms{{f, Q(1)}};
    for (const auto& [p, row] : e.rows()) {
      Q c = coeff(row, f);
      if (!ratdg::is_zero(c)) terms.emplace_back(p, -c);
    }
    out.push_back(from_terms(std::move(terms)));
  }
  return out;
}

std::vector<Vec> image_basis(const Matrix& m) {
  Echelon e;
  for (const auto& c : m.col) e.insert(c);
  e.make_reduced();
  std::vector<Vec> out;
  for (const auto& [p, row] : e.rows()) out.push_back(row);
  return out;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  Matrix t = m.transpose();  // rows of m
  Echelon e;
  for (int i = 0; i < m.rows; ++i) {
    Vec row = t.col[i];
    Q bi = coeff(b, i);
    if (!ratdg::is_zero(bi)) row.emplace_back(m.cols, bi);
    e.insert(std::move(row));
  }
  // a target entry outside the row range is simply ignored above; reject it
  for (const auto& [i, c] : b)
    if (i >= m.rows) return std::nullopt;
  e.make_reduced();
  std::vector<std::pair<int, Q>> x;
  for (const auto& [p, row] : e.rows()) {
    if (p == m.cols) return std::nullopt;
    Q rhs = coeff(row, m.cols);
    if (!ratdg::is_zero(rhs)) x.emplace_back(p, rhs);
  }
  return from_terms(std::move(x));
}

}  // namespace ratdg
