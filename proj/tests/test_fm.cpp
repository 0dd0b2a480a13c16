#include <doctest.h>

#include "flopcheck/fm.hpp"

using namespace flopcheck;

TEST_CASE("euler pairing examples") {
  Ring P1 = proj_space(1), P2 = proj_space(2);
  CHECK(euler_pairing(KClass::line(P1, 0), KClass::line(P1, -1)) == 0);
  CHECK(euler_pairing(KClass::line(P2, 0), KClass::line(P2, 3)) == 10);
  Ring P = local_model(1);
  CHECK(euler_pairing(KClass::line(P, 0, 0), KClass::line(P, 0, 0)) == 1);
  Ring W = blowup(1);
  CHECK(integrate(todd(tangent_bundle(W))) == 1);
}

TEST_CASE("kclass arithmetic") {
  Ring P = local_model(1);
  KClass a = KClass::line(P, 1, 0) + KClass::line(P, 0, 1);
  CHECK((a + (-1L) * KClass::line(P, 1, 0)) == KClass::line(P, 0, 1));
  CHECK((0L * a) == KClass::zero(P));
  CHECK(chern_character(2L * a) == RatClass(P, Rat(2) * chern_character(a).coeffs));
  CHECK_THROWS_AS(KClass::line(proj_space(1), 0, 1), Error);
}

TEST_CASE("graph correspondence") {
  FlopData fd(1);
  RatClass hp = RatClass::generator(fd.Pp, 0), xip = RatClass::generator(fd.Pp, 1);
  CHECK(graph_correspondence(fd, RatClass::one(fd.P)) == RatClass::one(fd.Pp));
  CHECK(graph_correspondence(fd, RatClass::generator(fd.P, 0)) == xip - hp);
  CHECK(graph_correspondence(fd, RatClass::generator(fd.P, 1)) == xip);
  CHECK(fd.fm != fd.graph);
  for (int r = 1; r <= 2; ++r) {
    FlopData f(r);
    const int n = f.P->size();
    for (int i = 0; i < n; ++i) {
      RatClass a = RatClass::basis_element(f.P, i);
      CHECK(degrees(graph_correspondence(f, a)) == degrees(a));
      for (int j = 0; j < n; ++j) {
        RatClass b = RatClass::basis_element(f.P, j);
        CHECK(integrate(mul(graph_correspondence(f, a), graph_correspondence(f, b))) == integrate(mul(a, b)));
      }
    }
    CHECK(graph_correspondence(f, c1(tangent_bundle(f.P))) == c1(tangent_bundle(f.Pp)));
    CHECK(determinant(f.graph) != 0);
  }
}

TEST_CASE("fourier mukai transform") {
  for (int r = 1; r <= 2; ++r) {
    FlopData fd(r);
    CAPTURE(r);
    CHECK(fm_transform(fd, RatClass::one(fd.P)) == RatClass::one(fd.Pp));
    CHECK(fm_transform(fd, RatClass::zero(fd.P)) == RatClass::zero(fd.Pp));
    auto lb = basis_line_bundles(fd.P);
    const int n = fd.P->size();
    for (int i = 0; i < n; ++i) {
      RatClass fi = fm_apply(fd, lb[i]).image;
      CHECK(fi.coeffs[0] == 1);
      for (int j = 0; j < n; ++j) {
        RatClass fj = fm_apply(fd, lb[j]).image;
        CHECK(euler_pairing(lb[i], lb[j]) == euler_pairing_ch(fi, fj));
      }
    }
    RatMatrix K = fm_lattice_matrix(fd);
    for (Eigen::Index i = 0; i < K.rows(); ++i)
      for (Eigen::Index j = 0; j < K.cols(); ++j) CHECK(denominator(K(i, j)) == 1);
    Rat det = determinant(K);
    CHECK((det == 1 || det == -1));
    CHECK(determinant(fd.fm) != 0);
  }
}
