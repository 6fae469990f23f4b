#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "desing/polynomial.hpp"

namespace desing {

// Exceptional divisor id, assigned in creation order starting at 1.
using DivisorLabel = int;

// Quotient of polynomials kept in lowest terms with a monic denominator.
struct RationalFunction {
  Polynomial num;
  Polynomial den;

  static RationalFunction from(const Polynomial& p);
  RationalFunction normalized() const;
  // nullopt when the denominator vanishes at the point.
  std::optional<Rational> evaluate(const std::vector<Rational>& point) const;
};

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
// f evaluated at rational functions (one per variable of f's ring).
RationalFunction substitute(const Polynomial& f, const std::vector<RationalFunction>& values);

enum class ChartOrigin { Root, Blowup, Hypersurface, CoordinateChange };

struct Chart {
  int id = 0;
  Ring ring;
  std::optional<int> parent;
  // Parent coordinates written in this chart's coordinates.
  RingMap from_parent;
  // This chart's coordinates as rational functions of the parent's.
  std::vector<RationalFunction> to_parent_inverse;
  // variable index -> divisor label
  std::map<std::size_t, DivisorLabel> exceptional;
  ChartOrigin origin = ChartOrigin::Root;
  std::vector<std::size_t> center;  // blow-up center variables (parent indices)
  std::size_t pivot = 0;            // for Blowup / Hypersurface
  std::size_t changed_var = 0;      // for CoordinateChange
  std::optional<Polynomial> shift;  // x_var -> x_var - shift
  int stage = 0;                    // stage at which the chart was created

  std::optional<DivisorLabel> label_of(std::size_t var) const;
  std::optional<std::size_t> var_of(DivisorLabel label) const;
  bool is_exceptional(std::size_t var) const { return exceptional.count(var) != 0; }
};

class ChartTree {
 public:
  // Root chart over `ring`; `initial` pre-labels coordinate hyperplanes as
  // divisors (labels 1, 2, ... in the given order).
  explicit ChartTree(Ring ring, const std::vector<std::size_t>& initial = {});

  const Chart& chart(int id) const { return charts_.at(static_cast<std::size_t>(id)); }
  const std::vector<Chart>& charts() const { return charts_; }
  const std::vector<int>& frontier() const { return frontier_; }
  int next_label() const { return next_label_; }
  // Stage at which each label was created (0 for initial divisors).
  int label_stage(DivisorLabel label) const { return label_stage_.at(label); }

  // Blow up the coordinate center V(x_v : v in vars) of a frontier chart. One
  // child per pivot for |vars| >= 2, one identity chart for a hypersurface.
  // All children share one fresh label. Returns child ids.
  std::vector<int> blowup(int chart_id, const std::vector<std::size_t>& vars, int stage);
  // The same with a label reserved by new_label: one global center met in
  // several charts is a single divisor.
  std::vector<int> blowup(int chart_id, const std::vector<std::size_t>& vars, int stage, DivisorLabel label);
  DivisorLabel new_label(int stage);
  // New frontier chart with x_var replaced by x_var - shift.
  int change_coordinates(int chart_id, std::size_t var, const Polynomial& shift, int stage);

  // Root coordinates written in the chart's coordinates.
  RingMap map_from_root(int chart_id) const;
  // Coordinates of chart `to` as rational functions of chart `from`.
  std::vector<RationalFunction> transition(int from, int to) const;

  struct Located {
    int chart;
    std::vector<Rational> point;
  };
  // Frontier charts containing the image of `point` of chart `chart_id`.
  std::vector<Located> locate(int chart_id, const std::vector<Rational>& point) const;
  // The same among an explicit set of charts (e.g. the frontier of an earlier stage).
  std::vector<Located> locate(int chart_id, const std::vector<Rational>& point,
                              const std::vector<int>& among) const;

 private:
  std::vector<int> path_to_root(int id) const;
  int add_chart(Chart c, int replaces);

  std::vector<Chart> charts_;
  std::vector<int> frontier_;
  std::map<DivisorLabel, int> label_stage_;
  int next_label_ = 1;
};

const char* to_string(ChartOrigin o);

}  // namespace desing
