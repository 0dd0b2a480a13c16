#include "flopcheck/rat.hpp"

#include "flopcheck/errors.hpp"

namespace flopcheck {

std::string format_rat(const Rat& x) {
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rat(Integer(std::string(text)));
    Integer p(std::string(text.substr(0, slash)));
    Integer q(std::string(text.substr(slash + 1)));
    if (q == 0) throw Error("zero denominator in rational '" + std::string(text) + "'");
    return Rat(p) / Rat(q);
  } catch (const std::runtime_error& e) {
    throw Error("cannot parse rational '" + std::string(text) + "': " + e.what());
  }
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Integer(0);
  Integer result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

Integer factorial(long n) {
  Integer result = 1;
  for (long i = 2; i <= n; ++i) result *= i;
  return result;
}

std::vector<Rat> bernoulli_numbers(int n) {
  // sum_{k=0}^{m} C(m+1,k) B_k = 0
  std::vector<Rat> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rat acc = 0;
    for (int k = 0; k < m; ++k) acc += Rat(binomial(m + 1, k)) * b[k];
    b[m] = -acc / Rat(m + 1);
  }
  return b;
}

std::vector<Rat> todd_series(int n) {
  // x/(1-e^{-x}) = sum_k (-1)^k B_k x^k / k!
  auto b = bernoulli_numbers(n);
  std::vector<Rat> c(n + 1);
  for (int k = 0; k <= n; ++k) {
    c[k] = b[k] / Rat(factorial(k));
    if (k % 2 == 1) c[k] = -c[k];
  }
  return c;
}

std::vector<Rat> exp_series(int n) {
  std::vector<Rat> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = Rat(1) / Rat(factorial(k));
  return c;
}

}  // namespace flopcheck
