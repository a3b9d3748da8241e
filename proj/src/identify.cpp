#include "rumid/identify.hpp"

#include <stdexcept>

namespace rumid {

ChoiceVector p_vector(const Preference& pref, const PairIndex& index) {
  ChoiceVector v = ChoiceVector::Zero(static_cast<Index>(index.size()));
  for (Menu menu : nonempty_menus(index.n())) v(static_cast<Index>(index({pref.best_in(menu), menu}))) = 1;
  return v;
}

ChoiceVector q_vector(const Preference& pref, const PairIndex& index) {
  ChoiceVector v = ChoiceVector::Zero(static_cast<Index>(index.size()));
  for (const auto& pair : upper_contour_pairs(pref)) v(static_cast<Index>(index(pair))) = 1;
  return v;
}

ChoiceVector p_vector(const Preference& pref) {
  require_vector_size(pref.size(), "p_vector");
  return p_vector(pref, PairIndex(pref.size()));
}

ChoiceVector q_vector(const Preference& pref) {
  require_vector_size(pref.size(), "q_vector");
  return q_vector(pref, PairIndex(pref.size()));
}

Index bareiss_rank(Matrix<Integer> m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  Integer previous = 1;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = r;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    const Integer lead = m(r, c);
    for (Index i = r + 1; i < rows; ++i) {
      const Integer factor = m(i, c);
      for (Index j = c + 1; j < cols; ++j) {
        Integer t = lead * m(i, j);
        if (factor != 0) t -= factor * m(r, j);
        m(i, j) = t / previous;
      }
      m(i, c) = 0;
    }
    previous = lead;
    ++r;
  }
  return r;
}

Index rank(std::span<const ChoiceVector> vectors) {
  if (vectors.empty()) return 0;
  return rank(stack_rows<Rational>(vectors));
}

std::vector<Vector<Rational>> nullspace(Matrix<Rational> a) {
  const Index rows = a.rows();
  const Index cols = a.cols();
  std::vector<Index> pivot_cols;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = r;
    while (pivot < rows && a(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) a.row(pivot).swap(a.row(r));
    const Rational lead = a(r, c);
    for (Index j = c; j < cols; ++j) a(r, j) /= lead;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational factor = a(i, c);
      for (Index j = c; j < cols; ++j) a(i, j) -= factor * a(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Vector<Rational>> basis;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector<Rational> v = Vector<Rational>::Zero(cols);
    v(free) = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v(pivot_cols[k]) = -a(static_cast<Index>(k), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

std::vector<Rational> primitive_integral(const Vector<Rational>& v) {
  Integer scale = 1;
  for (Index i = 0; i < v.size(); ++i) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(v(i)));
  std::vector<Integer> ints;
  Integer g = 0;
  for (Index i = 0; i < v.size(); ++i) {
    ints.push_back(boost::multiprecision::numerator(Rational(v(i) * scale)));
    g = boost::multiprecision::gcd(g, ints.back());
  }
  std::vector<Rational> out;
  for (const auto& z : ints) out.emplace_back(z / g);
  return out;
}

NullspaceCertificate make_certificate(const Model& model, const Vector<Rational>& kernel_vector) {
  auto coefficients = primitive_integral(kernel_vector);
  Rational positive = 0;
  Rational negative = 0;
  for (const auto& c : coefficients) {
    if (c > 0) positive += c;
    if (c < 0) negative -= c;
  }
  if (positive == 0 || negative == 0) {
    throw std::logic_error("nullspace vector of q-vectors must have both signs");
  }
  std::vector<Rational> nu(coefficients.size());
  std::vector<Rational> nu_prime(coefficients.size());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    nu[i] = coefficients[i] > 0 ? Rational(coefficients[i] / positive) : Rational(0);
    nu_prime[i] = coefficients[i] < 0 ? Rational(-coefficients[i] / negative) : Rational(0);
  }
  NullspaceCertificate cert{std::move(coefficients), PreferenceDistribution(model, std::move(nu)),
                            PreferenceDistribution(model, std::move(nu_prime))};
  if (!(rcr_from_distribution(cert.nu) == rcr_from_distribution(cert.nu_prime))) {
    throw std::logic_error("certificate distributions induce different rules");
  }
  return cert;
}

}  // namespace

IdentificationResult is_identified(const Model& model, IdentifyOptions options) {
  const int n = model.n();
  require_vector_size(n, "is_identified");
  const PairIndex index(n);

  std::vector<ChoiceVector> qs;
  qs.reserve(model.size());
  for (const auto& pref : model) qs.push_back(q_vector(pref, index));

  IdentificationResult result;
  result.model_size = model.size();
  result.rank = rank(std::span<const ChoiceVector>(qs));
  result.identified = result.rank == static_cast<Index>(model.size());

  if (options.check_p_route) {
    std::vector<ChoiceVector> ps;
    ps.reserve(model.size());
    for (const auto& pref : model) ps.push_back(p_vector(pref, index));
    result.p_rank = rank(std::span<const ChoiceVector>(ps));
    if (*result.p_rank != result.rank) throw std::logic_error("p-vector and q-vector ranks disagree");
  }

  if (!result.identified) {
    // Columns are the q-vectors, so kernel vectors are coefficient lists over the model.
    const auto kernel = nullspace(Matrix<Rational>(stack_rows<Rational>(qs).transpose()));
    if (static_cast<Index>(kernel.size()) != static_cast<Index>(model.size()) - result.rank) {
      throw std::logic_error("nullity does not match the fraction-free rank");
    }
    result.certificate = make_certificate(model, kernel.front());
  }
  return result;
}

Integer max_identified_size(int n) {
  if (n < 1) throw std::invalid_argument("max_identified_size needs n >= 1");
  Integer power = 1;
  power <<= (n - 1);
  return Integer(n - 2) * power + 2;
}

bool append_one_preserves_rank(std::span<const ChoiceVector> vectors) {
  if (vectors.empty()) return true;
  const Rational sum = vectors.front().sum();
  if (sum == 0) throw std::invalid_argument("coordinate sums must be nonzero");
  for (const auto& v : vectors) {
    if (v.sum() != sum) throw std::invalid_argument("coordinate sums differ: " + format_rational(sum) + " vs " +
                                                    format_rational(Rational(v.sum())));
  }
  std::vector<ChoiceVector> extended;
  extended.reserve(vectors.size());
  for (const auto& v : vectors) {
    ChoiceVector e(v.size() + 1);
    e.head(v.size()) = v;
    e(v.size()) = 1;
    extended.push_back(std::move(e));
  }
  return rank(vectors) == rank(std::span<const ChoiceVector>(extended));
}

}  // namespace rumid
