#include "mcfin/exactla.hpp"

#include <algorithm>
#include <map>
#include <fstream>
#include <sstream>

namespace mcfin {

Mat::Mat(const Field* f, int rows, int cols) : f_(f), r_(rows), c_(cols), e_((size_t)rows * cols, Cyclo(f)) {}

Mat Mat::identity(const Field* f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.e_[i * n + i] = Cyclo(f, 1);
  return m;
}

Mat Mat::scalar(const Cyclo& s, int n) {
  Mat m(s.fld(), n, n);
  for (int i = 0; i < n; ++i) m.e_[i * n + i] = s;
  return m;
}

Mat Mat::from_rows(const Field* f, const std::vector<std::vector<Cyclo>>& rows) {
  int r = (int)rows.size();
  int c = r ? (int)rows[0].size() : 0;
  Mat m(f, r, c);
  for (int i = 0; i < r; ++i) {
    if ((int)rows[i].size() != c) throw Error("ragged matrix rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void Mat::set(int i, int j, const Cyclo& v) {
  if (v.fld() == f_)
    e_[i * c_ + j] = v;
  else
    e_[i * c_ + j] = embed(v, f_);
}

namespace {
const Field* same(const Mat& a, const Mat& b) {
  if (a.fld() != b.fld()) throw Error("matrix field mismatch");
  return a.fld();
}
}  // namespace

Mat operator*(const Mat& a, const Mat& b) {
  const Field* f = same(a, b);
  if (a.c_ != b.r_) throw Error("matrix shape mismatch");
  Mat r(f, a.r_, b.c_);
  for (int i = 0; i < a.r_; ++i)
    for (int k = 0; k < a.c_; ++k) {
      const Cyclo& x = a.e_[i * a.c_ + k];
      if (x.is_zero()) continue;
      for (int j = 0; j < b.c_; ++j) {
        const Cyclo& y = b.e_[k * b.c_ + j];
        if (!y.is_zero()) r.e_[i * b.c_ + j] += x * y;
      }
    }
  return r;
}

Mat operator+(const Mat& a, const Mat& b) {
  same(a, b);
  if (a.r_ != b.r_ || a.c_ != b.c_) throw Error("matrix shape mismatch");
  Mat r = a;
  for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
  return r;
}

Mat operator-(const Mat& a, const Mat& b) { return a + (-b); }

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

Mat Mat::operator*(const Cyclo& s) const {
  Mat r = *this;
  Cyclo t = s.fld() == f_ ? s : embed(s, f_);
  for (auto& x : r.e_) x = x * t;
  return r;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.f_ == b.f_ && a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_;
}

size_t Mat::hash() const {
  size_t h = (size_t)r_ * 31 + c_;
  for (auto& x : e_) h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Mat Mat::inverse() const {
  if (!square()) throw Error("inverse of non-square matrix");
  int n = r_;
  Mat a = *this, inv = identity(f_, n);
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (!a(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) throw Error("singular matrix");
    if (p != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a.e_[p * n + j], a.e_[col * n + j]);
        std::swap(inv.e_[p * n + j], inv.e_[col * n + j]);
      }
    Cyclo pv = a(col, col).inv();
    for (int j = 0; j < n; ++j) {
      a.e_[col * n + j] *= pv;
      inv.e_[col * n + j] *= pv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      Cyclo f = a(i, col);
      for (int j = 0; j < n; ++j) {
        if (!a.e_[col * n + j].is_zero()) a.e_[i * n + j] -= f * a.e_[col * n + j];
        if (!inv.e_[col * n + j].is_zero()) inv.e_[i * n + j] -= f * inv.e_[col * n + j];
      }
    }
  }
  return inv;
}

Cyclo Mat::det() const {
  if (!square()) throw Error("det of non-square matrix");
  int n = r_;
  if (n == 1) return e_[0];
  if (n == 2) return e_[0] * e_[3] - e_[1] * e_[2];
  Mat a = *this;
  Cyclo d(f_, 1);
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (!a(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return Cyclo(f_);
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(a.e_[p * n + j], a.e_[col * n + j]);
      d = -d;
    }
    d *= a(col, col);
    Cyclo pv = a(col, col).inv();
    for (int i = col + 1; i < n; ++i) {
      if (a(i, col).is_zero()) continue;
      Cyclo f = a(i, col) * pv;
      for (int j = col; j < n; ++j) a.e_[i * n + j] -= f * a.e_[col * n + j];
    }
  }
  return d;
}

Cyclo Mat::trace() const {
  Cyclo t(f_);
  for (int i = 0; i < std::min(r_, c_); ++i) t += e_[i * c_ + i];
  return t;
}

Mat Mat::transpose() const {
  Mat t(f_, c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t.e_[j * r_ + i] = e_[i * c_ + j];
  return t;
}

Mat Mat::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Mat r = identity(f_, r_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

int Mat::rank() const {
  Mat m = *this;
  return (int)rref(m).size();
}

bool Mat::is_identity() const { return *this == identity(f_, r_); }

bool Mat::is_scalar() const {
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) {
      if (i != j && !e_[i * c_ + j].is_zero()) return false;
      if (i == j && e_[i * c_ + j] != e_[0]) return false;
    }
  return true;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  Mat b(f_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b.e_[i * nc + j] = e_[(r0 + i) * c_ + c0 + j];
  return b;
}

Mat Mat::embed_to(const Field* f) const {
  if (f == f_) return *this;
  Mat m(f, r_, c_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = embed(e_[i], f);
  return m;
}

Mat Mat::galois(long k) const {
  Mat m = *this;
  for (auto& x : m.e_) x = x.galois(k);
  return m;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << "dim=" << r_;
  if (r_ != c_) os << "x" << c_;
  os << "; field=" << f_->n << ";\n";
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) {
      const Cyclo& x = e_[i * c_ + j];
      os << (j ? " " : "") << (x.is_rational() ? x.rational().get_str() : x.str());
    }
    os << ";\n";
  }
  return os.str();
}

namespace {
std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace

Mat Mat::parse(const std::string& text) {
  // statements separated by ';'
  std::vector<std::string> st;
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      st.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!strip(cur).empty()) throw Error("matrix text must end with ';'");
  int rows = -1, cols = -1, n = -1;
  size_t i = 0;
  for (; i < st.size() && (rows < 0 || n < 0); ++i) {
    const std::string& s = st[i];
    if (s.rfind("dim=", 0) == 0) {
      std::string d = s.substr(4);
      auto x = d.find('x');
      rows = std::stoi(d.substr(0, x));
      cols = x == std::string::npos ? rows : std::stoi(d.substr(x + 1));
    } else if (s.rfind("field=", 0) == 0) {
      n = std::stoi(s.substr(6));
    } else if (!s.empty()) {
      throw Error("unexpected matrix header: " + s);
    }
  }
  if (rows < 0 || n < 0) throw Error("matrix header needs dim= and field=");
  const Field* f = field(n);
  Mat m(f, rows, cols);
  int r = 0;
  for (; i < st.size(); ++i) {
    if (st[i].empty()) continue;
    if (r >= rows) throw Error("too many matrix rows");
    std::istringstream is(st[i]);
    std::string tok;
    int c = 0;
    while (is >> tok) {
      if (c >= cols) throw Error("too many entries in row");
      m.set(r, c++, Cyclo::parse(tok));
    }
    if (c != cols) throw Error("too few entries in row");
    ++r;
  }
  if (r != rows) throw Error("too few matrix rows");
  return m;
}

std::string Mat::pretty() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << e_[i * c_ + j].pretty();
  }
  os << "]";
  return os.str();
}

int min_conductor(const Mat& m) {
  int n = m.fld()->n;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (auto& x : m.entries())
      if (!try_descend(x, d)) {
        ok = false;
        break;
      }
    if (ok) return d;
  }
  return n;
}

Mat descend(const Mat& m, int n) {
  const Field* f = field(n);
  Mat r(f, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      auto v = try_descend(m(i, j), n);
      if (!v) throw Error("entry does not descend to Q(zeta_" + std::to_string(n) + ")");
      r.set(i, j, *v);
    }
  return r;
}

// ---------------------------------------------------------------- charpoly

Cyclo CharPoly::eval(const Cyclo& x) const {
  Cyclo r = embed(c.back(), x.fld());
  for (int i = degree() - 1; i >= 0; --i) r = r * x + c[i];
  return r;
}

Mat CharPoly::eval(const Mat& A) const {
  int n = A.rows();
  Mat r = Mat::scalar(embed(c.back(), A.fld()), n);
  for (int i = degree() - 1; i >= 0; --i) r = r * A + Mat::scalar(embed(c[i], A.fld()), n);
  return r;
}

CharPoly charpoly(const Mat& A) {
  // Faddeev-LeVerrier
  int n = A.rows();
  const Field* f = A.fld();
  CharPoly p;
  p.c.assign(n + 1, Cyclo(f));
  p.c[n] = Cyclo(f, 1);
  Mat M = Mat::identity(f, n);
  for (int k = 1; k <= n; ++k) {
    Mat AM = A * M;
    Cyclo ck = -AM.trace() * Cyclo(f, mpq_class(1, k));
    p.c[n - k] = ck;
    if (k < n) M = AM + Mat::scalar(ck, n);
  }
  return p;
}

int root_multiplicity(const CharPoly& p, Root z) {
  int N = (int)lcml(p.c[0].conductor(), z.d);
  const Field* f = field(N);
  Cyclo zz = Cyclo::root(f, z);
  std::vector<Cyclo> q;
  for (auto& x : p.c) q.push_back(embed(x, f));
  int mult = 0;
  while (q.size() > 1) {
    // synthetic division by (x - z)
    int d = (int)q.size() - 1;
    std::vector<Cyclo> out(d, Cyclo(f));
    Cyclo acc = q[d];
    for (int i = d - 1; i >= 0; --i) {
      out[i] = acc;
      acc = q[i] + acc * zz;
    }
    if (!acc.is_zero()) break;
    ++mult;
    q = out;
  }
  return mult;
}

std::vector<std::pair<Root, int>> eig_multiplicity(const CharPoly& p, const std::vector<Root>& cands) {
  std::vector<std::pair<Root, int>> r;
  for (auto& z : cands) {
    int m = root_multiplicity(p, z);
    if (m) r.push_back({z, m});
  }
  return r;
}

std::vector<std::pair<Root, int>> eig_multiplicity(const Mat& A, const std::vector<Root>& cands) {
  return eig_multiplicity(charpoly(A), cands);
}

std::vector<Root> roots_dividing(int N) {
  std::vector<Root> r;
  for (int k = 0; k < N; ++k) r.push_back(Root::make(N, k));
  std::sort(r.begin(), r.end(), [](const Root& a, const Root& b) {
    return (long)a.k * b.d < (long)b.k * a.d;
  });
  return r;
}

std::vector<std::pair<Root, int>> root_spectrum(const CharPoly& p, int N) {
  // evaluate everything in one field once
  int M = (int)lcml(p.c[0].conductor(), N);
  const Field* f = field(M);
  std::vector<Cyclo> base;
  for (auto& x : p.c) base.push_back(embed(x, f));
  std::vector<std::pair<Root, int>> r;
  int total = 0;
  for (auto& z : roots_dividing(N)) {
    if (total == p.degree()) break;
    Cyclo zz = Cyclo::root(f, z);
    std::vector<Cyclo> q = base;
    int mult = 0;
    while (q.size() > 1) {
      int d = (int)q.size() - 1;
      std::vector<Cyclo> out(d, Cyclo(f));
      Cyclo acc = q[d];
      for (int i = d - 1; i >= 0; --i) {
        out[i] = acc;
        acc = q[i] + acc * zz;
      }
      if (!acc.is_zero()) break;
      ++mult;
      q = out;
    }
    if (mult) {
      r.push_back({z, mult});
      total += mult;
    }
  }
  return r;
}

// ---------------------------------------------------------------- subspaces

std::vector<int> rref(Mat& m) {
  std::vector<int> piv;
  int R = m.rows(), C = m.cols();
  int row = 0;
  // direct entry access through set() is slow; work on a copy of rows
  std::vector<std::vector<Cyclo>> a(R, std::vector<Cyclo>(C));
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) a[i][j] = m(i, j);
  for (int col = 0; col < C && row < R; ++col) {
    int p = -1;
    for (int i = row; i < R; ++i)
      if (!a[i][col].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    Cyclo inv = a[row][col].inv();
    for (int j = col; j < C; ++j)
      if (!a[row][j].is_zero()) a[row][j] *= inv;
    for (int i = 0; i < R; ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      Cyclo f = a[i][col];
      for (int j = col; j < C; ++j)
        if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
    }
    piv.push_back(col);
    ++row;
  }
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) m.set(i, j, a[i][j]);
  return piv;
}

Subspace span_rows(const Mat& rows) {
  Mat m = rows;
  Subspace s;
  s.ambient = rows.cols();
  s.pivots = rref(m);
  s.basis = m.block(0, 0, (int)s.pivots.size(), rows.cols());
  return s;
}

Subspace kernel(const Mat& A) {
  Mat m = A;
  auto piv = rref(m);
  int C = A.cols();
  std::vector<bool> isp(C, false);
  for (int p : piv) isp[p] = true;
  std::vector<int> fr;
  for (int j = 0; j < C; ++j)
    if (!isp[j]) fr.push_back(j);
  Mat B(A.fld(), (int)fr.size(), C);
  for (size_t t = 0; t < fr.size(); ++t) {
    int j = fr[t];
    B.set(t, j, Cyclo(A.fld(), 1));
    for (size_t r = 0; r < piv.size(); ++r) B.set(t, piv[r], -m(r, j));
  }
  return span_rows(B);
}

Subspace image(const Mat& A) { return span_rows(A.transpose()); }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw Error("ambient mismatch");
  const Field* f = a.dim() ? a.basis.fld() : (b.dim() ? b.basis.fld() : field(1));
  Mat m(f, a.dim() + b.dim(), a.ambient);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.ambient; ++j) m.set(i, j, a.basis(i, j));
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < a.ambient; ++j) m.set(a.dim() + i, j, b.basis(i, j));
  return span_rows(m);
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  // v = a^T x = b^T y  <=>  [a^T | -b^T] (x;y) = 0
  if (a.dim() == 0 || b.dim() == 0) {
    Subspace z;
    z.ambient = a.ambient;
    z.basis = Mat(field(1), 0, a.ambient);
    return z;
  }
  const Field* f = a.basis.fld();
  int n = a.ambient;
  Mat m(f, n, a.dim() + b.dim());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < a.dim(); ++k) m.set(i, k, a.basis(k, i));
    for (int k = 0; k < b.dim(); ++k) m.set(i, a.dim() + k, -b.basis(k, i));
  }
  Subspace K = kernel(m);
  Mat v(f, K.dim(), n);
  for (int t = 0; t < K.dim(); ++t)
    for (int j = 0; j < n; ++j) {
      Cyclo s(f);
      for (int k = 0; k < a.dim(); ++k) s += K.basis(t, k) * a.basis(k, j);
      v.set(t, j, s);
    }
  return span_rows(v);
}

bool Subspace::contains(const std::vector<Cyclo>& v) const {
  // subtract pivot components, residual must vanish
  std::vector<Cyclo> r = v;
  for (int i = 0; i < dim(); ++i) {
    Cyclo c = r[pivots[i]];
    if (c.is_zero()) continue;
    for (int j = 0; j < ambient; ++j)
      if (!basis(i, j).is_zero()) r[j] -= c * basis(i, j);
  }
  for (auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

bool is_invariant(const Mat& B, const Subspace& U) {
  for (int i = 0; i < U.dim(); ++i) {
    std::vector<Cyclo> w(U.ambient, Cyclo(B.fld()));
    for (int r = 0; r < U.ambient; ++r)
      for (int c = 0; c < U.ambient; ++c)
        if (!U.basis(i, c).is_zero()) w[r] += B(r, c) * U.basis(i, c);
    if (!U.contains(w)) return false;
  }
  return true;
}

Mat quotient_action(const Mat& B, const Subspace& U) {
  int n = U.ambient;
  if (!is_invariant(B, U)) throw Error("subspace is not invariant");
  const Field* f = B.fld();
  std::vector<bool> isp(n, false);
  for (int p : U.pivots) isp[p] = true;
  std::vector<int> comp;
  for (int j = 0; j < n; ++j)
    if (!isp[j]) comp.push_back(j);
  int k = U.dim();
  Mat P(f, n, n);
  for (int i = 0; i < k; ++i)
    for (int r = 0; r < n; ++r) P.set(r, i, U.basis(i, r));
  for (size_t t = 0; t < comp.size(); ++t) P.set(comp[t], k + (int)t, Cyclo(f, 1));
  Mat Q = P.inverse() * B * P;
  return Q.block(k, k, n - k, n - k);
}

}  // namespace mcfin

namespace mcfin {

std::vector<Mat> parse_mats(const std::string& text) {
  std::string clean;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    clean += line + "\n";
  }
  std::vector<Mat> out;
  size_t pos = clean.find("dim=");
  if (pos == std::string::npos) {
    if (!strip(clean).empty()) throw Error("no matrices in text");
    return out;
  }
  if (!strip(clean.substr(0, pos)).empty()) throw Error("junk before first matrix");
  while (pos != std::string::npos) {
    size_t next = clean.find("dim=", pos + 4);
    out.push_back(Mat::parse(clean.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
    pos = next;
  }
  return out;
}

std::string mats_str(const std::vector<Mat>& ms) {
  std::string s;
  for (auto& m : ms) s += m.str();
  return s;
}

std::vector<Mat> read_mats(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mats(ss.str());
}

}  // namespace mcfin
