#include "oracle.hpp"
#include "qc/normalform.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

using qc::BoxKind;
using qc::Circuit;
using qc::Gate;
using qc::NormalBox;
using qc::NormalForm;
using qc::Pauli;
using qc::Tableau;

namespace {

// count of normal forms by the closed product, evaluated independently
qc::BigInt product_formula(int n) {
  qc::BigInt total = 6;
  qc::BigInt nine_k = 1;
  for (int k = 1; k <= n; ++k) {
    nine_k *= 9;
    total *= 3 * (nine_k - 1) * nine_k;
  }
  return total;
}

// every phase-free one-qutrit normal form
std::vector<NormalForm> all_single_qutrit_forms() {
  std::vector<NormalForm> out;
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z) {
      if (!x && !z) continue;
      for (int c = 0; c < 3; ++c)
        for (int e = 0; e < 3; ++e)
          for (int f = 0; f < 3; ++f) {
            std::vector<NormalBox> boxes{NormalBox::a(x, z, 0), NormalBox::c(c, 0), NormalBox::e(e, 0),
                                         NormalBox::f(f, 0)};
            out.push_back(qc::normal_form_from_boxes(1, 0, boxes));
          }
    }
  return out;
}

oracle::Mat matrix_of(const NormalForm& nf) { return oracle::circuit_matrix(qc::normal_form_circuit(nf)); }

}  // namespace

TEST(Boxes, IndexDomains) {
  std::map<BoxKind, int> count;
  for (const auto& b : qc::all_boxes()) {
    EXPECT_TRUE(b.valid()) << b.str();
    ++count[b.kind];
  }
  EXPECT_EQ(count[BoxKind::A], 8);
  EXPECT_EQ(count[BoxKind::B], 9);
  EXPECT_EQ(count[BoxKind::C], 3);
  EXPECT_EQ(count[BoxKind::D], 9);
  EXPECT_EQ(count[BoxKind::E], 3);
  EXPECT_EQ(count[BoxKind::F], 3);
  EXPECT_FALSE(NormalBox::a(0, 0, 0).valid());
  EXPECT_EQ(NormalBox::a(1, 2, 3).str(), "A12@3");
}

TEST(Boxes, SingleQutritBoxCircuits) {
  for (int v = 0; v < 3; ++v) {
    Circuit cx(1), ce(1), cf(1);
    cx.add(Gate::x(0), v);
    ce.add(Gate::s(0), v);
    cf.add(Gate::z(0), (2 * v) % 3);
    EXPECT_EQ(qc::interpret(qc::box_circuit(NormalBox::c(v, 0), 1)), qc::interpret(cx));
    EXPECT_EQ(qc::interpret(qc::box_circuit(NormalBox::e(v, 0), 1)), qc::interpret(ce));
    EXPECT_EQ(qc::interpret(qc::box_circuit(NormalBox::f(v, 0), 1)), qc::interpret(cf));
  }
  Circuit h2(1);
  h2.add(Gate::h(0), 2);
  EXPECT_EQ(qc::interpret(qc::box_circuit(NormalBox::a(0, 2, 0), 1)), qc::interpret(h2));
}

TEST(Boxes, DBoxesRelateToB00) {
  auto b00 = qc::box_circuit(NormalBox::b(0, 0, 0), 2);
  EXPECT_EQ(qc::interpret(qc::box_circuit(NormalBox::d(0, 2, 0), 2)), qc::interpret(b00));
  EXPECT_EQ(qc::interpret(qc::box_circuit(NormalBox::d(0, 1, 0), 2)), qc::interpret(qc::inverse(b00)));
}

TEST(Boxes, EveryBoxRealizesItsActions) {
  for (const auto& b : qc::all_boxes()) {
    const int n = b.width();
    Circuit c = qc::box_circuit(b, n);
    Tableau t = qc::tableau_of(c);
    auto u = oracle::circuit_matrix(c);
    auto actions = qc::box_action(b);
    ASSERT_EQ(actions.size(), 2u) << b.str();
    for (const auto& act : actions) {
      EXPECT_EQ(t.apply(act.in), act.out) << b.str() << ": " << act.in.str() << " -> " << act.out.str();
      auto img = oracle::mul(oracle::mul(u, oracle::pauli_matrix(act.in)), oracle::dagger(u));
      EXPECT_LT(oracle::dist(img, oracle::pauli_matrix(act.out)), 1e-9) << b.str();
    }
  }
}

TEST(Boxes, RequiredActionsByKind) {
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z) {
      Tableau tb = qc::tableau_of(qc::box_circuit(NormalBox::b(x, z, 0), 2));
      Pauli in(0, {static_cast<std::uint8_t>(x), 0}, {static_cast<std::uint8_t>(z), 1});
      EXPECT_EQ(tb.apply(in), Pauli::z_on(2, 0));
      Tableau td = qc::tableau_of(qc::box_circuit(NormalBox::d(x, z, 0), 2));
      EXPECT_EQ(td.apply(Pauli::z_on(2, 0)), Pauli::z_on(2, 1));
      Pauli xin(0, {1, static_cast<std::uint8_t>(x)}, {0, static_cast<std::uint8_t>(z)});
      EXPECT_EQ(td.apply(xin), Pauli::x_on(2, 1));
    }
  for (int v = 0; v < 3; ++v)
    for (auto kind : {BoxKind::E, BoxKind::F}) {
      NormalBox b = kind == BoxKind::E ? NormalBox::e(v, 0) : NormalBox::f(v, 0);
      EXPECT_EQ(qc::tableau_of(qc::box_circuit(b, 1)).apply(Pauli::z_on(1, 0)), Pauli::z_on(1, 0));
    }
  EXPECT_EQ(qc::tableau_of(qc::box_circuit(NormalBox::a(0, 1, 0), 1)).apply(Pauli::z_on(1, 0)), Pauli::z_on(1, 0));
}

TEST(Layers, ZLayerExamples) {
  auto zl = qc::synth_z_layer(Pauli::z_on(1, 0));
  EXPECT_EQ(zl.a, std::make_pair(0, 1));
  EXPECT_EQ(zl.c, 0);

  auto z2 = qc::synth_z_layer(Pauli::single(1, 0, 2, 0, 2));
  EXPECT_EQ(z2.a, std::make_pair(2, 0));
  EXPECT_EQ(z2.c, 2);

  Pauli xz(0, {1, 0}, {0, 1});
  auto z3 = qc::synth_z_layer(xz);
  EXPECT_EQ(z3.m, 1);
  EXPECT_EQ(z3.a, std::make_pair(0, 1));
  ASSERT_EQ(z3.b.size(), 1u);
  EXPECT_EQ(z3.b[0], std::make_pair(1, 0));
  EXPECT_EQ(z3.c, 0);

  EXPECT_THROW(qc::synth_z_layer(Pauli::identity(2)), std::invalid_argument);
}

TEST(Layers, XLayerExamples) {
  auto x1 = qc::synth_x_layer(Pauli::x_on(1, 0));
  EXPECT_EQ(x1.e, 0);
  EXPECT_EQ(x1.f, 0);

  auto x2 = qc::synth_x_layer(Pauli::single(1, 0, 1, 1, 1));
  EXPECT_EQ(x2.e, 1);
  EXPECT_EQ(x2.f, 1);

  Pauli q(0, {1, 1}, {1, 0});
  auto x3 = qc::synth_x_layer(q);
  ASSERT_EQ(x3.d.size(), 1u);
  EXPECT_EQ(x3.d[0], std::make_pair(1, 0));
  EXPECT_EQ(x3.e, 1);
  EXPECT_EQ(x3.f, 0);

  EXPECT_THROW(qc::synth_x_layer(Pauli::z_on(1, 0)), std::invalid_argument);
}

TEST(Layers, LayerMapsItsPairToTheLastWire) {
  std::mt19937_64 rng(21);
  for (int n = 1; n <= 4; ++n)
    for (int rep = 0; rep < 30; ++rep) {
      Tableau t = qc::tableau_of(qc::random_word(n, 30, rng()));
      Pauli p = t.zimg[n - 1], q = t.ximg[n - 1];
      qc::Layer l{qc::synth_z_layer(p), {}};
      Circuit zc(n);
      for (const auto& b : qc::layer_boxes(l.z)) zc.append(qc::box_circuit(b, n));
      Tableau tz = qc::tableau_of(zc);
      EXPECT_EQ(tz.apply(p), Pauli::z_on(n, 0));
      l.x = qc::synth_x_layer(tz.apply(q));
      Circuit all = zc;
      for (const auto& b : qc::layer_boxes(l.x)) all.append(qc::box_circuit(b, n));
      Tableau ta = qc::tableau_of(all);
      EXPECT_EQ(ta.apply(p), Pauli::z_on(n, n - 1));
      EXPECT_EQ(ta.apply(q), Pauli::x_on(n, n - 1));
    }
}

TEST(Layers, PerturbingABoxIndexBreaksTheAction) {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3;
    NormalForm nf = qc::random_normal_form(n, rng());
    Tableau good = qc::tableau_of(qc::normal_form_circuit(nf));
    auto boxes = qc::normal_form_boxes(nf);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      auto changed = boxes;
      NormalBox& b = changed[i];
      b.i0 = (b.i0 + 1) % 3;
      if (!b.valid()) b.i0 = (b.i0 + 1) % 3;
      if (!b.valid()) continue;
      Circuit c(n);
      for (const auto& x : changed) c.append(qc::box_circuit(x, n));
      EXPECT_NE(qc::tableau_of(c), good) << "box " << i;
    }
  }
}

TEST(Synthesis, IdentityOnOneQutrit) {
  NormalForm nf = qc::synthesize(Tableau::identity(1));
  auto boxes = qc::normal_form_boxes(nf);
  std::vector<NormalBox> expect{NormalBox::a(0, 1, 0), NormalBox::c(0, 0), NormalBox::e(0, 0), NormalBox::f(0, 0)};
  EXPECT_EQ(boxes, expect);
  NormalForm with = qc::synthesize_with_phase(Circuit(1));
  EXPECT_TRUE(qc::interpret(qc::normal_form_circuit(with)).is_identity());
}

TEST(Synthesis, ShshIsIdempotent) {
  Circuit c(1);
  c.add(Gate::h(0)).add(Gate::s(0)).add(Gate::h(0)).add(Gate::s(0));
  NormalForm nf = qc::synthesize_with_phase(c);
  EXPECT_EQ(qc::interpret(qc::normal_form_circuit(nf)), qc::interpret(c));
  NormalForm again = qc::synthesize_with_phase(qc::normal_form_circuit(nf));
  EXPECT_EQ(again, nf);
}

TEST(Synthesis, RandomFormsRoundTrip) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 1 + static_cast<int>(rep % 3);
    NormalForm nf = qc::random_normal_form(n, rng());
    ASSERT_TRUE(qc::well_formed(nf));
    NormalForm back = qc::synthesize(qc::tableau_of(qc::normal_form_circuit(nf)));
    EXPECT_TRUE(back.same_boxes(nf)) << qc::normal_form_to_text(nf);
  }
}

TEST(Synthesis, WithPhaseMatchesMatrixExactly) {
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Circuit c = qc::random_word(n, 30, seed);
      NormalForm nf = qc::synthesize_with_phase(c);
      EXPECT_EQ(qc::interpret(qc::normal_form_circuit(nf)), qc::interpret(c));
      EXPECT_LT(oracle::dist(matrix_of(nf), oracle::circuit_matrix(c)), 1e-8);
    }
}

TEST(Synthesis, WithPhaseRefusesLargeN) {
  EXPECT_THROW(qc::synthesize_with_phase(Circuit(7)), std::invalid_argument);
  EXPECT_NO_THROW(qc::synthesize_with_phase(Circuit(3), 3));
}

TEST(Synthesis, RejectsInvalidTableau) {
  Tableau t = Tableau::identity(2);
  t.zimg[0] = Pauli::x_on(2, 0);
  EXPECT_THROW(qc::synthesize(t), std::invalid_argument);
}

TEST(Synthesis, ClearBoxCountBound) {
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(qc::max_clean_boxes(n), static_cast<std::size_t>(n * n + 3 * n));
  std::mt19937_64 rng(24);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + static_cast<int>(rep % 4);
    NormalForm nf = qc::random_normal_form(n, rng());
    EXPECT_LE(qc::normal_form_boxes(nf).size(), qc::max_clean_boxes(n));
  }
}

TEST(Synthesis, OneQutritFormsUseOnlyACEF) {
  std::mt19937_64 rng(25);
  for (int rep = 0; rep < 50; ++rep)
    for (const auto& b : qc::normal_form_boxes(qc::random_normal_form(1, rng())))
      EXPECT_TRUE(b.kind == BoxKind::A || b.kind == BoxKind::C || b.kind == BoxKind::E || b.kind == BoxKind::F);
}

TEST(Counting, MatchesClosedProduct) {
  EXPECT_EQ(qc::count_normal_forms(0), 6);
  EXPECT_EQ(qc::count_normal_forms(1), 1296);
  EXPECT_EQ(qc::count_normal_forms(2), qc::BigInt(25194240));
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(qc::count_normal_forms(n), product_formula(n)) << n;
}

TEST(Counting, OneQutritFormsArePairwiseDistinct) {
  auto forms = all_single_qutrit_forms();
  ASSERT_EQ(forms.size(), 216u);
  std::vector<qc::CycloMatrix> mats;
  for (const auto& f : forms) mats.push_back(qc::interpret(qc::normal_form_circuit(f)));
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      EXPECT_FALSE(qc::equal_up_to_phase(mats[i], mats[j])) << i << " " << j;
}

TEST(Sampling, DeterministicAndWellShaped) {
  EXPECT_EQ(qc::random_normal_form(3, 9), qc::random_normal_form(3, 9));
  NormalForm nf = qc::random_normal_form(3, 10);
  EXPECT_TRUE(qc::well_formed(nf));
  EXPECT_EQ(nf.layers.size(), 3u);
  for (std::size_t i = 0; i < nf.layers.size(); ++i) EXPECT_EQ(nf.layers[i].z.width, 3 - static_cast<int>(i));
}

TEST(Sampling, OneQutritDistributionIsUniform) {
  std::map<std::string, int> hist;
  const int samples = 100000;
  for (int s = 0; s < samples; ++s) {
    NormalForm nf = qc::random_normal_form(1, static_cast<std::uint64_t>(s));
    nf.t = 0;
    ++hist[qc::normal_form_to_text(nf)];
  }
  EXPECT_EQ(hist.size(), 216u);
  const double mean = samples / 216.0, sigma = std::sqrt(mean * (1 - 1 / 216.0));
  for (const auto& [k, v] : hist) EXPECT_LT(std::abs(v - mean), 5 * sigma) << k;
}

TEST(Serialization, TextAndJson) {
  NormalForm nf = qc::random_normal_form(3, 4);
  EXPECT_EQ(qc::normal_form_from_json(qc::normal_form_to_json(nf)), nf);
  const std::string text = qc::normal_form_to_text(nf);
  EXPECT_EQ(text.rfind("n=3 t=", 0), 0u);
  EXPECT_NE(text.find("layer 3:"), std::string::npos);
  EXPECT_EQ(qc::normal_form_from_boxes(3, nf.t, qc::normal_form_boxes(nf)), nf);
}
