#include "qop/demo.hpp"

#include "qop/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace qop {

namespace {

constexpr double kEntryTol = 1e-12;
constexpr double kStateTol = 1e-10;
constexpr double kGap = 1e-6;

double entry_gap(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::string format(const Matrix& m) {
  std::string out;
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += "    [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, " %+.6f%+.6fi", m(i, j).real(), m(i, j).imag());
      out += buf;
    }
    out += " ]\n";
  }
  return out;
}

class Builder {
 public:
  void section(const std::string& title) { text_ << "\n== " << title << " ==\n"; }

  void show(const std::string& name, const Matrix& m) { text_ << "  " << name << " =\n" << format(m); }

  void show(const std::string& name, const Observable& a) {
    for (std::size_t x = 0; x < a.size(); ++x) show(name + "[" + a.labels()[x].text() + "]", a.effect(x));
  }

  void equal(const std::string& name, const Matrix& got, const Matrix& want, double tol = kEntryTol) {
    record(name, entry_gap(got, want), tol, false);
  }

  void record(const std::string& name, double dev, double tol, bool expect_gap) {
    DemoCheck c{name, dev, tol, expect_gap, expect_gap ? dev > tol : dev < tol};
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-48s %s  deviation %.3e (%s %.0e)\n", name.c_str(),
                  c.passed ? "ok  " : "FAIL", dev, expect_gap ? ">" : "<", tol);
    text_ << buf;
    result_.checks.push_back(std::move(c));
  }

  DemoResult finish() {
    result_.text = text_.str();
    return std::move(result_);
  }

 private:
  std::ostringstream text_;
  DemoResult result_;
};

}  // namespace

bool DemoResult::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const DemoCheck& c) { return c.passed; });
}

DemoResult run_demo(std::uint64_t seed) {
  Generator g(seed);
  Builder out;
  const LabelList x{Label("x1"), Label("x2"), Label("x3")};
  const LabelList y{Label("y1"), Label("y2"), Label("y3")};
  const Observable av = g.observable(2, x);
  const Observable bv = g.observable(2, x);
  auto a = [&](int i) -> const Matrix& { return av.effect(static_cast<std::size_t>(i - 1)); };
  auto b = [&](int i) -> const Matrix& { return bv.effect(static_cast<std::size_t>(i - 1)); };
  auto lx = [&](int i) { return x[static_cast<std::size_t>(i - 1)]; };
  auto ly = [&](int i) { return y[static_cast<std::size_t>(i - 1)]; };
  auto n = [](int i) { return std::to_string(i); };
  const std::vector<double> half{0.5, 0.5};

  auto relabel = [](const Observable& src, const LabelList& labels) {
    std::vector<Observable::Outcome> outcomes;
    for (std::size_t i = 0; i < src.size(); ++i) outcomes.emplace_back(labels[i], src.effect(i));
    return Observable(std::move(outcomes));
  };

  out.section("qubit observables {a_i}, {b_i} (seed " + std::to_string(seed) + ")");
  out.show("a", av);
  out.show("b", bv);

  out.section("A = 1/2 A^1 + 1/2 A^2 (convex combination)");
  {
    const std::vector<Observable> terms{av, bv};
    const Observable mix = gen_convex(half, terms);
    out.show("A", mix);
    for (int i = 1; i <= 3; ++i)
      out.equal("A[x" + n(i) + "] = (a_" + n(i) + " + b_" + n(i) + ")/2", mix.effect(lx(i)), 0.5 * (a(i) + b(i)));
  }

  out.section("B = 1/2 B^1 u 1/2 B^2 (convex union)");
  {
    const std::vector<Observable> terms{av, relabel(bv, y)};
    const Observable un = gen_convex(half, terms);
    out.show("B", un);
    for (int i = 1; i <= 3; ++i) {
      out.equal("B[x" + n(i) + "] = a_" + n(i) + "/2", un.effect(lx(i)), 0.5 * a(i));
      out.equal("B[y" + n(i) + "] = b_" + n(i) + "/2", un.effect(ly(i)), 0.5 * b(i));
    }
  }

  out.section("C = 1/2 C^1 v 1/2 C^2, spaces {x1,x2,x3} and {x1,y2,y3}");
  {
    const Observable c2 = relabel(bv, {lx(1), ly(2), ly(3)});
    const std::vector<Observable> terms{av, c2};
    const Observable c = gen_convex(half, terms);
    out.show("C", c);
    out.equal("C[x1] = (a_1 + b_1)/2", c.effect(lx(1)), 0.5 * (a(1) + b(1)));
    out.equal("C[x2] = a_2/2", c.effect(lx(2)), 0.5 * a(2));
    out.equal("C[x3] = a_3/2", c.effect(lx(3)), 0.5 * a(3));
    out.equal("C[y2] = b_2/2", c.effect(ly(2)), 0.5 * b(2));
    out.equal("C[y3] = b_3/2", c.effect(ly(3)), 0.5 * b(3));
  }

  out.section("D = 1/2 D^1 v 1/2 D^2, spaces {x1,x2,x3} and {x1,x2,y3}");
  {
    const Observable d2 = relabel(bv, {lx(1), lx(2), ly(3)});
    const std::vector<Observable> terms{av, d2};
    const Observable d = gen_convex(half, terms);
    out.show("D", d);
    out.equal("D[x1] = (a_1 + b_1)/2", d.effect(lx(1)), 0.5 * (a(1) + b(1)));
    out.equal("D[x2] = (a_2 + b_2)/2", d.effect(lx(2)), 0.5 * (a(2) + b(2)));
    out.equal("D[x3] = a_3/2", d.effect(lx(3)), 0.5 * a(3));
    out.equal("D[y3] = b_3/2", d.effect(ly(3)), 0.5 * b(3));
  }

  const Observable bobs = relabel(bv, y);
  const State alpha = g.state(2);
  const State beta = g.state(2);
  const State rho = g.state(2);
  const Instrument ti = make_trivial(av, alpha);
  const Instrument tj = make_trivial(bobs, beta);

  out.section("trivial instruments I = (a, alpha), J = (b, beta)");
  out.show("alpha", alpha.matrix());
  out.show("beta", beta.matrix());
  out.show("rho", rho.matrix());
  {
    const Instrument cond = conditional_instrument(tj, ti);
    for (std::size_t j = 0; j < bobs.size(); ++j) {
      const double w = (alpha.matrix() * bobs.effect(j)).trace().real();
      out.equal("(J|I)[" + bobs.labels()[j].text() + "](rho) = tr(alpha b_y) beta", cond.operation(j)(rho.matrix()),
                w * beta.matrix(), kStateTol);
    }
  }

  out.section("measured observable of a sequential product");
  {
    const double trivial_gap = observable_distance(measured_observable(seq_instrument(ti, tj)),
                                                   seq_obs(measured_observable(ti), measured_observable(tj)));
    out.record("trivial pair: (I o J)^ vs I^ o J^", trivial_gap, kGap, true);

    const Instrument ki = g.instrument(2, x, 1);
    const Instrument kj = g.instrument(2, y, 1);
    const double kraus_gap = observable_distance(measured_observable(seq_instrument(ki, kj)),
                                                 seq_obs(measured_observable(ki), measured_observable(kj)));
    out.record("Kraus pair: (I o J)^ vs I^ o J^", kraus_gap, kGap, true);

    const Instrument la = make_luders(av);
    const Instrument lb = make_luders(bobs);
    const double luders_gap = observable_distance(measured_observable(seq_instrument(la, lb)), seq_obs(av, bobs));
    out.record("Lueders pair: (L^a o L^b)^ vs a o b", luders_gap, 1e-9, false);
  }

  out.section("f(L^a) for f(x1) = f(x2) = z1, f(x3) = z2");
  {
    const OutcomeMap f({{lx(1), Label("z1")}, {lx(2), Label("z1")}, {lx(3), Label("z2")}},
                       {Label("z1"), Label("z2")});
    const Instrument part_l = part_instrument(make_luders(av), f);
    const InstrumentKind kind = classify(part_l);
    out.record("f(L^a) Lueders deviation", kind.lueders_deviation, kGap, true);
    out.record("f(L^a) vs L^f(a), Choi distance", instrument_choi_distance(part_l, make_luders(part(av, f))), kGap,
               true);
  }

  return out.finish();
}

}  // namespace qop
