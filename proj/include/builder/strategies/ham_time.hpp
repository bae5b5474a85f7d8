#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "builder/rotation.hpp"
#include "builder/strategies/basic.hpp"
#include "builder/strategy.hpp"

namespace builder {

struct HamTimeParams {
  double epsilon = 0.5;
  // O_k degree used while building the expander.
  std::int32_t expander_degree = 8;
  // While hitting boosters, also keep edges touching vertices whose degree is
  // below this value (0 disables).
  std::int32_t keep_degree = 0;
  RotationConfig rotation{};
};

// Nearest-neighbour emulation for the first (1 + eps/2) n ln n / 2 observations,
// then purchase every operational booster until a Hamilton cycle closes.
class HamTimeRun final : public BuilderRun {
 public:
  HamTimeRun(std::int64_t n, std::int64_t t, std::int64_t b, HamTimeParams p)
      : BuilderRun(n, t, b), p_(p), low_(n, p.expander_degree) {
    if (n < 3) throw InvalidParameter("Hamiltonicity needs n >= 3");
    if (!(p.epsilon > 0.0)) throw InvalidParameter("ham_time needs epsilon > 0");
    if (p.expander_degree < 1) throw InvalidParameter("expander degree must be positive");
    const double nn = static_cast<double>(n);
    stage1_time_ = static_cast<std::int64_t>(std::ceil((1.0 + p.epsilon / 2.0) * nn * std::log(nn) / 2.0));
    stage1_budget_ = static_cast<std::int64_t>(p.expander_degree) * n;
    set_counter("stage1_time", stage1_time_);
  }

  StrategyDescriptor descriptor() const override {
    return {"ham_time",
            {{"epsilon", format_param(p_.epsilon)},
             {"expander_degree", std::to_string(p_.expander_degree)},
             {"keep_degree", std::to_string(p_.keep_degree)}},
            {"expander", "boosters"}};
  }

  const PathSystem* path_system() const { return paths_ ? &*paths_ : nullptr; }

 protected:
  Decision decide(Edge e) override {
    const auto& g = graph();
    if (stage() == 0 && (now() > stage1_time_ || stage1_purchased_ >= stage1_budget_)) enter_stage2();
    if (stage() == 0)
      return g.degree(e.u) < p_.expander_degree || g.degree(e.v) < p_.expander_degree ? Decision::Purchase
                                                                                       : Decision::Skip;
    if (paths_->is_operational_booster(e)) {
      bump("boosters");
      return Decision::Purchase;
    }
    if (g.degree(e.u) < p_.keep_degree || g.degree(e.v) < p_.keep_degree) {
      bump("degree_keeps");
      return Decision::Purchase;
    }
    return Decision::Skip;
  }

  void on_purchased(Edge e) override {
    if (stage() == 0) {
      ++stage1_purchased_;
      low_.on_edge(graph(), e);
      return;
    }
    report(paths_->absorb_edge(e));
  }

  void on_finish() override {
    if (paths_) set_counter("path_length", paths_->path_length());
  }

 private:
  void enter_stage2() {
    set_stage(1);
    set_counter("stage1_purchased", stage1_purchased_);
    set_counter("stage1_below_degree", low_.low());
    paths_.emplace(graph(), p_.rotation);
    report(paths_->seed(0));
  }

  void report(const AbsorbOutcome& out) {
    set_counter("path_length", paths_->path_length());
    if (out.kind == AbsorbKind::HamiltonCycleClosed) succeed({WitnessKind::HamiltonCycle, out.witness, {}});
  }

  HamTimeParams p_;
  LowDegreeCounter low_;
  std::int64_t stage1_time_ = 0;
  std::int64_t stage1_budget_ = 0;
  std::int64_t stage1_purchased_ = 0;
  std::optional<PathSystem> paths_;
};

}  // namespace builder
