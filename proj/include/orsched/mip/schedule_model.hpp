// Copyright 2026 The orsched Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orsched/core/instance.hpp"
#include "orsched/core/penalties.hpp"
#include "orsched/core/schedule.hpp"
#include "orsched/mip/linear_model.hpp"

namespace orsched {

class ModelError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Constraint blocks. kDifference, kFixAdmissions and kFixOrder are the
// heuristic blocks; kFreeze pins every x to a given assignment.
enum class Block {
  kA, kB, kC, kD, kE, kF, kG, kH,
  kDifference, kFixAdmissions, kFixOrder, kFreeze,
};

const char* ToString(Block block);

enum class ObjectiveKind { kNominal, kDifference, kEmergency, kNoShow };

const char* ToString(ObjectiveKind kind);

struct ModelOptions {
  int epsilon = 1;
  // Caps the first availability of an empty room at h. Without it an empty
  // room's availability is only bounded below, and the first-available room
  // rule can be met by a busy room.
  bool cap_empty_room_availability = true;
  // Weight of the dropped-patient term of the difference objective; empty
  // means |I| * |D|.
  std::optional<Rational> mu_weight;
};

// Decision values in domain form. Vectors are empty for blocks the model
// lacks. Index conventions: orders and substitutes [w * |J| + j];
// emergency_room [h * |W| + w]; emergency_plans [(h * |W| + w) * |L| + l];
// noshow_plans [b * |W| + w].
struct FullSolution {
  Assignment nominal;
  std::vector<std::vector<int>> orders;
  std::vector<int> emergency_room;
  std::vector<Assignment> emergency_plans;
  std::vector<std::vector<int>> dropped;  // raw mu, per emergency plan
  std::vector<Assignment> noshow_plans;
  std::vector<std::optional<int>> substitutes;
  bool operator==(const FullSolution&) const = default;
};

// Builds the scheduling MILP block by block on top of a LinearModel.
class ScheduleModel {
 public:
  ScheduleModel(const Instance& instance, ModelOptions options = {});

  void AddBlockA();
  void AddBlockB();
  void AddBlockC();
  void AddBlockD();
  void AddBlockE();
  void AddBlockF();
  void AddBlockG();
  void AddBlockH();
  // Blocks A to H.
  void AddCompleteModel();
  void AddDifferenceBlock(const Assignment& x_star);
  void AddFixAdmissions(const Assignment& x_star);
  // y >= y*, with y* read from per-(w, room) patient orders.
  void AddFixOrder(const std::vector<std::vector<int>>& orders);
  void AddFreeze(const Assignment& x_star);

  bool Has(Block block) const { return blocks_.count(block) > 0; }
  void SetObjective(ObjectiveKind kind);
  std::optional<ObjectiveKind> objective() const { return objective_; }

  const LinearModel& model() const { return model_; }
  const Instance& instance() const { return instance_; }
  const PenaltyTable& penalties() const { return penalties_; }
  int positions() const { return positions_; }

  // Column indices; -1 when the family is absent.
  int x(int i, int d, int j) const { return At(x_, {i, d, j}); }
  int y(int i, int w, int j, int s) const { return At(y_, {i, w, j, s}); }
  int nu(int i, int r, int w, int j) const;
  int xi(int i, int w, int j) const { return At(xi_, {i, w, j}); }
  int release(int w, int j) const { return At(release_, {w, j}); }
  int rho(int h, int w, int j) const { return At(rho_, {h, w, j}); }
  int lambda(int i, int w, int j, int h) const {
    return At(lambda_, {i, w, j, h});
  }
  int avail(int h, int w, int j) const { return At(avail_, {h, w, j}); }
  int eta(int h, int w, int j) const { return At(eta_, {h, w, j}); }
  int chi(int h, int w, int i) const { return At(chi_, {h, w, i}); }
  int xbar(int h, int w, int l, int i, int d, int j) const {
    return At(xbar_, {h, w, l, i, d, j});
  }
  int mu(int h, int w, int l, int i) const { return At(mu_, {h, w, l, i}); }
  int xhat(int b, int w, int i, int d, int j) const {
    return At(xhat_, {b, w, i, d, j});
  }
  int theta(int i, int w, int j) const { return At(theta_, {i, w, j}); }
  int xdiff(int i, int d) const { return At(xdiff_, {i, d}); }

  // Domain form -> column vector; derived variables (start times, releases,
  // occupancy, impact flags, minimal mu, differences) are computed from the
  // domain values. Throws ModelError when the solution does not fit.
  std::vector<double> Encode(const FullSolution& solution) const;
  FullSolution Decode(const std::vector<double>& values) const;

  // Exact value of the installed objective on a decoded solution.
  Rational ExactObjective(ObjectiveKind kind,
                          const FullSolution& solution) const;

 private:
  struct Family {
    int base = -1;
    std::vector<int> dims;
  };

  int At(const Family& f, std::initializer_list<int> index) const;
  Family Register(const std::string& prefix, std::vector<int> dims,
                  bool binary);
  void Require(Block block, std::initializer_list<Block> needs);
  void Row(LinearTerms terms, Sense sense, double rhs, std::string family,
           std::vector<int> index);
  int Gap(int w) const;  // day index g of robust day w

  Rational MuWeight() const;

  const Instance& instance_;
  ModelOptions options_;
  PenaltyTable penalties_;
  LinearModel model_;
  std::set<Block> blocks_;
  std::optional<ObjectiveKind> objective_;
  Assignment x_star_diff_;
  int positions_ = 0;
  int I_, D_, J_, W_, H_, L_;

  Family x_, y_, nu_, xi_, release_, rho_, lambda_, avail_, eta_, chi_, xbar_,
      mu_, xhat_, theta_, xdiff_;
};

}  // namespace orsched
