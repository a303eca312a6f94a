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

#include "orsched/mip/schedule_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orsched {

const char* ToString(Block block) {
  switch (block) {
    case Block::kA: return "A";
    case Block::kB: return "B";
    case Block::kC: return "C";
    case Block::kD: return "D";
    case Block::kE: return "E";
    case Block::kF: return "F";
    case Block::kG: return "G";
    case Block::kH: return "H";
    case Block::kDifference: return "i";
    case Block::kFixAdmissions: return "ii";
    case Block::kFixOrder: return "iii";
    case Block::kFreeze: return "freeze";
  }
  return "?";
}

const char* ToString(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kNominal: return "nominal";
    case ObjectiveKind::kDifference: return "difference";
    case ObjectiveKind::kEmergency: return "emergency";
    case ObjectiveKind::kNoShow: return "noshow";
  }
  return "?";
}

ScheduleModel::ScheduleModel(const Instance& instance, ModelOptions options)
    : instance_(instance),
      options_(std::move(options)),
      penalties_(ComputePenalties(instance)),
      I_(instance.num_patients()),
      D_(instance.horizon_days),
      J_(instance.rooms),
      W_(instance.num_robust_days()),
      H_(instance.slots_per_day),
      L_(instance.num_lengths()) {
  instance_.Validate();
  if (options_.epsilon < 1) throw ModelError("epsilon must be >= 1 slot");
}

int ScheduleModel::At(const Family& f, std::initializer_list<int> index) const {
  if (f.base < 0) return -1;
  int flat = 0;
  auto dim = f.dims.begin();
  for (int v : index) {
    flat = flat * *dim + v;
    ++dim;
  }
  return f.base + flat;
}

ScheduleModel::Family ScheduleModel::Register(const std::string& prefix,
                                              std::vector<int> dims,
                                              bool binary) {
  Family f;
  f.base = model_.num_columns();
  f.dims = dims;
  std::size_t total = 1;
  for (int n : dims) total *= static_cast<std::size_t>(n);
  std::vector<int> index(dims.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::string name = prefix;
    for (int v : index) name += "_" + std::to_string(v);
    if (binary) {
      model_.AddBinary(std::move(name));
    } else {
      model_.AddContinuous(std::move(name));
    }
    for (int pos = static_cast<int>(dims.size()) - 1; pos >= 0; --pos) {
      if (++index[pos] < dims[pos]) break;
      index[pos] = 0;
    }
  }
  return f;
}

void ScheduleModel::Require(Block block, std::initializer_list<Block> needs) {
  if (Has(block)) {
    throw ModelError(std::string("block ") + ToString(block) +
                     " already added");
  }
  for (Block need : needs) {
    if (!Has(need)) {
      throw ModelError(std::string("block ") + ToString(block) +
                       " requires block " + ToString(need));
    }
  }
}

void ScheduleModel::Row(LinearTerms terms, Sense sense, double rhs,
                        std::string family, std::vector<int> index) {
  model_.AddRow(std::move(terms), sense, rhs,
                RowTag{std::move(family), std::move(index)});
}

int ScheduleModel::Gap(int w) const { return instance_.robust_days[w]; }

int ScheduleModel::nu(int i, int r, int w, int j) const {
  if (nu_.base < 0 || i == r) return -1;
  const int rr = r < i ? r : r - 1;
  return nu_.base + ((i * (I_ - 1) + rr) * W_ + w) * J_ + j;
}

void ScheduleModel::AddBlockA() {
  Require(Block::kA, {});
  x_ = Register("x", {I_, D_, J_}, true);
  for (int i = 0; i < I_; ++i) {
    LinearTerms terms;
    for (int d = 0; d < D_; ++d) {
      for (int j = 0; j < J_; ++j) terms.emplace_back(x(i, d, j), 1);
    }
    Row(std::move(terms), Sense::kLe, 1, "assign_once", {i});
  }
  for (int i = 0; i < I_; ++i) {
    for (int d = 0; d < D_; ++d) {
      for (int j = 0; j < J_; ++j) {
        Row({{x(i, d, j), 1}}, Sense::kLe,
            instance_.patients[i].Compatible(d, j) ? 1 : 0, "compat",
            {i, d, j});
      }
    }
  }
  for (int d = 0; d < D_; ++d) {
    for (int j = 0; j < J_; ++j) {
      LinearTerms terms;
      for (int i = 0; i < I_; ++i) {
        terms.emplace_back(x(i, d, j), instance_.patients[i].Duration(d, j));
      }
      Row(std::move(terms), Sense::kLe, instance_.capacity(d, j), "capacity",
          {d, j});
    }
  }
  blocks_.insert(Block::kA);
}

void ScheduleModel::AddBlockB() {
  Require(Block::kB, {Block::kA});
  positions_ = PositionCount(instance_);
  const int S = positions_;
  y_ = Register("y", {I_, W_, J_, S}, true);
  nu_ = Register("nu", {I_, std::max(I_ - 1, 1), W_, J_}, true);
  if (I_ == 1) {
    // With one patient there is no ordered pair; fix the placeholder at 0.
    for (int w = 0; w < W_; ++w) {
      for (int j = 0; j < J_; ++j) {
        model_.SetBounds(nu_.base + w * J_ + j, 0, 0);
      }
    }
  }
  xi_ = Register("xi", {I_, W_, J_}, false);
  for (int w = 0; w < W_; ++w) {
    const int g = Gap(w);
    for (int i = 0; i < I_; ++i) {
      for (int j = 0; j < J_; ++j) {
        LinearTerms terms;
        for (int s = 0; s < S; ++s) terms.emplace_back(y(i, w, j, s), 1);
        terms.emplace_back(x(i, g, j), -1);
        Row(std::move(terms), Sense::kEq, 0, "position_link", {i, w, j});
      }
    }
    for (int j = 0; j < J_; ++j) {
      for (int s = 0; s + 1 < S; ++s) {
        LinearTerms terms;
        for (int i = 0; i < I_; ++i) {
          terms.emplace_back(y(i, w, j, s + 1), 1);
          terms.emplace_back(y(i, w, j, s), -1);
        }
        Row(std::move(terms), Sense::kLe, 0, "position_contiguity", {j, w, s});
      }
    }
    for (int j = 0; j < J_; ++j) {
      for (int s = 0; s < S; ++s) {
        LinearTerms terms;
        for (int i = 0; i < I_; ++i) terms.emplace_back(y(i, w, j, s), 1);
        Row(std::move(terms), Sense::kLe, 1, "position_unique", {j, w, s});
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int j = 0; j < J_; ++j) {
        LinearTerms terms{{xi(i, w, j), 1}, {x(i, g, j), -1}};
        for (int r = 0; r < I_; ++r) {
          if (r == i) continue;
          terms.emplace_back(nu(i, r, w, j),
                             -instance_.patients[r].Duration(g, j));
        }
        Row(std::move(terms), Sense::kEq, 0, "start_time", {i, w, j});
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int r = 0; r < I_; ++r) {
        if (r == i) continue;
        for (int j = 0; j < J_; ++j) {
          for (int s = 0; s < S; ++s) {
            LinearTerms terms{{y(i, w, j, s), 1}, {nu(i, r, w, j), -1}};
            for (int n = 0; n < s; ++n) terms.emplace_back(y(r, w, j, n), 1);
            Row(std::move(terms), Sense::kLe, 1, "precedence_order",
                {i, r, w, j, s});
          }
        }
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int r = 0; r < I_; ++r) {
        if (r == i) continue;
        for (int j = 0; j < J_; ++j) {
          Row({{nu(i, r, w, j), 1}, {x(r, g, j), -1}}, Sense::kLe, 0,
              "precedence_room", {i, r, w, j});
        }
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int r = 0; r < I_; ++r) {
        if (r == i) continue;
        for (int j = 0; j < J_; ++j) {
          Row({{nu(i, r, w, j), 1}, {nu(r, i, w, j), 1}}, Sense::kLe, 1,
              "precedence_antisym", {i, r, w, j});
        }
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int j = 0; j < J_; ++j) {
        const int t = instance_.patients[i].Duration(g, j);
        Row({{xi(i, w, j), 1},
             {x(i, g, j), -(instance_.capacity(g, j) + 1.0 - t)}},
            Sense::kLe, 0, "start_bound", {i, w, j});
      }
    }
  }
  blocks_.insert(Block::kB);
}

void ScheduleModel::AddBlockC() {
  Require(Block::kC, {Block::kB});
  release_ = Register("C", {W_, J_}, false);
  rho_ = Register("rho", {H_, W_, J_}, true);
  lambda_ = Register("lambda", {I_, W_, J_, H_}, true);
  avail_ = Register("Xi", {H_, W_, J_}, false);
  const double H = H_;
  for (int w = 0; w < W_; ++w) {
    const int g = Gap(w);
    auto t = [&](int i, int j) { return instance_.patients[i].Duration(g, j); };
    for (int i = 0; i < I_; ++i) {
      for (int j = 0; j < J_; ++j) {
        Row({{release(w, j), 1}, {xi(i, w, j), -1}, {x(i, g, j), -t(i, j)}},
            Sense::kGe, 0, "release", {i, j, w});
      }
    }
    for (int h = 0; h < H_; ++h) {
      for (int j = 0; j < J_; ++j) {
        Row({{release(w, j), -1}, {rho(h, w, j), -H}}, Sense::kLe, -h,
            "empty_upper", {w, h, j});
      }
    }
    for (int h = 0; h < H_; ++h) {
      for (int j = 0; j < J_; ++j) {
        Row({{release(w, j), -1}, {rho(h, w, j), -(H + 1)}}, Sense::kGe,
            -h - H - 1, "empty_lower", {w, h, j});
      }
    }
    for (int j = 0; j < J_; ++j) {
      for (int h = 0; h < H_; ++h) {
        LinearTerms terms{{rho(h, w, j), 1}};
        for (int i = 0; i < I_; ++i) terms.emplace_back(lambda(i, w, j, h), 1);
        Row(std::move(terms), Sense::kEq, 1, "occupant", {w, j, h});
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int j = 0; j < J_; ++j) {
        for (int h = 1; h < H_; ++h) {
          Row({{xi(i, w, j), 1}, {x(i, g, j), t(i, j)},
               {lambda(i, w, j, h), -h}},
              Sense::kGe, 0, "occupant_end", {i, w, j, h});
        }
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int j = 0; j < J_; ++j) {
        for (int h = 1; h < H_; ++h) {
          Row({{xi(i, w, j), 1}, {lambda(i, w, j, h), H - h}}, Sense::kLe, H,
              "occupant_start", {i, w, j, h});
        }
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int j = 0; j < J_; ++j) {
        for (int h = 0; h < H_; ++h) {
          Row({{avail(h, w, j), 1}, {xi(i, w, j), -1}, {x(i, g, j), -t(i, j)},
               {lambda(i, w, j, h), -H}},
              Sense::kGe, -H, "avail_lower", {i, w, j, h});
        }
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int j = 0; j < J_; ++j) {
        for (int h = 0; h < H_; ++h) {
          Row({{avail(h, w, j), 1}, {xi(i, w, j), -1}, {x(i, g, j), -t(i, j)},
               {lambda(i, w, j, h), H}},
              Sense::kLe, H, "avail_upper", {i, w, j, h});
        }
      }
    }
    if (options_.cap_empty_room_availability) {
      for (int j = 0; j < J_; ++j) {
        for (int h = 0; h < H_; ++h) {
          Row({{avail(h, w, j), 1}, {rho(h, w, j), H}}, Sense::kLe, h + H,
              "avail_empty", {w, j, h});
        }
      }
    }
  }
  blocks_.insert(Block::kC);
}

void ScheduleModel::AddBlockD() {
  Require(Block::kD, {Block::kC});
  eta_ = Register("eta", {H_, W_, J_}, true);
  const double H = H_;
  for (int h = 0; h < H_; ++h) {
    for (int w = 0; w < W_; ++w) {
      LinearTerms terms;
      for (int j = 0; j < J_; ++j) terms.emplace_back(eta(h, w, j), 1);
      Row(std::move(terms), Sense::kEq, 1, "emergency_room", {h, w});
    }
  }
  for (int w = 0; w < W_; ++w) {
    for (int j = 0; j < J_; ++j) {
      for (int k = 0; k < J_; ++k) {
        if (k == j) continue;
        for (int h = 0; h < H_; ++h) {
          Row({{avail(h, w, j), 1}, {avail(h, w, k), -1}, {eta(h, w, j), H}},
              Sense::kLe, H, "emergency_first", {w, j, k, h});
        }
      }
    }
  }
  blocks_.insert(Block::kD);
}

void ScheduleModel::AddBlockE() {
  Require(Block::kE, {Block::kB, Block::kC, Block::kD});
  chi_ = Register("chi", {H_, W_, I_}, true);
  xbar_ = Register("xbar", {H_, W_, L_, I_, D_, J_}, true);
  mu_ = Register("mu", {H_, W_, L_, I_}, true);
  const double H = H_;
  const int delta = instance_.max_delay;
  for (int i = 0; i < I_; ++i) {
    for (int w = 0; w < W_; ++w) {
      for (int h = 0; h < H_; ++h) {
        LinearTerms terms{{chi(h, w, i), -H}};
        for (int j = 0; j < J_; ++j) terms.emplace_back(xi(i, w, j), 1);
        Row(std::move(terms), Sense::kLe, h, "impact_upper", {i, w, h});
      }
    }
  }
  for (int i = 0; i < I_; ++i) {
    for (int w = 0; w < W_; ++w) {
      for (int h = 0; h < H_; ++h) {
        LinearTerms terms{{chi(h, w, i), -(h + options_.epsilon)}};
        for (int j = 0; j < J_; ++j) terms.emplace_back(xi(i, w, j), 1);
        Row(std::move(terms), Sense::kGe, 0, "impact_lower", {i, w, h});
      }
    }
  }
  for (int i = 0; i < I_; ++i) {
    for (int h = 0; h < H_; ++h) {
      for (int w = 0; w < W_; ++w) {
        const int g = Gap(w);
        for (int l = 0; l < L_; ++l) {
          LinearTerms terms{{chi(h, w, i), -1}};
          for (int d = 0; d < std::min(D_, g + delta); ++d) {
            for (int j = 0; j < J_; ++j) {
              terms.emplace_back(xbar(h, w, l, i, d, j), 1);
            }
          }
          Row(std::move(terms), Sense::kGe, 0, "impact_window", {i, h, w, l});
        }
      }
    }
  }
  for (int h = 0; h < H_; ++h) {
    for (int w = 0; w < W_; ++w) {
      for (int i = 0; i < I_; ++i) {
        for (int d = 0; d < D_; ++d) {
          for (int l = 0; l < L_; ++l) {
            LinearTerms terms{{mu(h, w, l, i), 1}};
            for (int k = d; k <= std::min(D_ - 1, d + delta); ++k) {
              for (int j = 0; j < J_; ++j) {
                terms.emplace_back(xbar(h, w, l, i, k, j), 1);
              }
            }
            for (int j = 0; j < J_; ++j) terms.emplace_back(x(i, d, j), -1);
            Row(std::move(terms), Sense::kGe, 0, "keep_window",
                {h, w, i, d, l});
          }
        }
      }
    }
  }
  blocks_.insert(Block::kE);
}

void ScheduleModel::AddBlockF() {
  Require(Block::kF, {Block::kE});
  for (int i = 0; i < I_; ++i) {
    for (int d = 0; d < D_; ++d) {
      for (int h = 0; h < H_; ++h) {
        for (int w = 0; w < W_; ++w) {
          for (int l = 0; l < L_; ++l) {
            LinearTerms terms;
            for (int j = 0; j < J_; ++j) terms.emplace_back(x(i, d, j), 1);
            for (int k = 0; k < d; ++k) {
              for (int j = 0; j < J_; ++j) {
                terms.emplace_back(xbar(h, w, l, i, k, j), 1);
              }
            }
            Row(std::move(terms), Sense::kLe, 1, "bar_no_anticipation",
                {i, d, h, w, l});
          }
        }
      }
    }
  }
  for (int h = 0; h < H_; ++h) {
    for (int w = 0; w < W_; ++w) {
      for (int l = 0; l < L_; ++l) {
        for (int i = 0; i < I_; ++i) {
          LinearTerms terms;
          for (int d = 0; d < D_; ++d) {
            for (int j = 0; j < J_; ++j) {
              terms.emplace_back(xbar(h, w, l, i, d, j), 1);
              terms.emplace_back(x(i, d, j), -1);
            }
          }
          Row(std::move(terms), Sense::kLe, 0, "bar_no_new", {h, w, l, i});
        }
      }
    }
  }
  for (int h = 0; h < H_; ++h) {
    for (int w = 0; w < W_; ++w) {
      const int g = Gap(w);
      for (int i = 0; i < I_; ++i) {
        for (int j = 0; j < J_; ++j) {
          for (int l = 0; l < L_; ++l) {
            Row({{xbar(h, w, l, i, g, j), 1}, {x(i, g, j), -1},
                 {chi(h, w, i), 1}},
                Sense::kGe, 0, "bar_keep", {h, w, i, j, l});
          }
        }
      }
    }
  }
  for (int h = 0; h < H_; ++h) {
    for (int w = 0; w < W_; ++w) {
      for (int i = 0; i < I_; ++i) {
        for (int l = 0; l < L_; ++l) {
          LinearTerms terms;
          for (int d = 0; d < D_; ++d) {
            for (int j = 0; j < J_; ++j) {
              terms.emplace_back(xbar(h, w, l, i, d, j), 1);
            }
          }
          Row(std::move(terms), Sense::kLe, 1, "bar_once", {h, w, i, l});
        }
      }
    }
  }
  for (int h = 0; h < H_; ++h) {
    for (int w = 0; w < W_; ++w) {
      for (int i = 0; i < I_; ++i) {
        for (int j = 0; j < J_; ++j) {
          for (int d = 0; d < D_; ++d) {
            for (int l = 0; l < L_; ++l) {
              Row({{xbar(h, w, l, i, d, j), 1}}, Sense::kLe,
                  instance_.patients[i].Compatible(d, j) ? 1 : 0, "bar_compat",
                  {h, w, i, j, d, l});
            }
          }
        }
      }
    }
  }
  for (int j = 0; j < J_; ++j) {
    for (int d = 0; d < D_; ++d) {
      for (int h = 0; h < H_; ++h) {
        for (int w = 0; w < W_; ++w) {
          if (d <= Gap(w)) continue;
          for (int l = 0; l < L_; ++l) {
            LinearTerms terms;
            for (int i = 0; i < I_; ++i) {
              terms.emplace_back(xbar(h, w, l, i, d, j),
                                 instance_.patients[i].Duration(d, j));
            }
            Row(std::move(terms), Sense::kLe, instance_.capacity(d, j),
                "bar_capacity", {j, d, h, w, l});
          }
        }
      }
    }
  }
  for (int j = 0; j < J_; ++j) {
    for (int h = 0; h < H_; ++h) {
      for (int w = 0; w < W_; ++w) {
        const int g = Gap(w);
        const int cap = instance_.capacity(g, j);
        for (int l = 0; l < L_; ++l) {
          const int reduction =
              std::max(0, std::min(instance_.emergency_lengths[l], cap - h));
          LinearTerms terms{{eta(h, w, j), static_cast<double>(reduction)}};
          for (int i = 0; i < I_; ++i) {
            terms.emplace_back(xbar(h, w, l, i, g, j),
                               instance_.patients[i].Duration(g, j));
          }
          Row(std::move(terms), Sense::kLe, cap + instance_.overtime,
              "bar_capacity_emergency", {j, h, w, l});
        }
      }
    }
  }
  blocks_.insert(Block::kF);
}

void ScheduleModel::AddBlockG() {
  Require(Block::kG, {Block::kA});
  xhat_ = Register("xhat", {I_, W_, I_, D_, J_}, true);
  theta_ = Register("theta", {I_, W_, J_}, true);
  for (int j = 0; j < J_; ++j) {
    for (int w = 0; w < W_; ++w) {
      LinearTerms terms;
      for (int i = 0; i < I_; ++i) terms.emplace_back(theta(i, w, j), 1);
      Row(std::move(terms), Sense::kLe, 1, "sub_once", {j, w});
    }
  }
  for (int i = 0; i < I_; ++i) {
    for (int w = 0; w < W_; ++w) {
      const int next = Gap(w) + 1;
      LinearTerms terms;
      for (int j = 0; j < J_; ++j) terms.emplace_back(theta(i, w, j), 1);
      for (int k = 0; k < J_; ++k) terms.emplace_back(x(i, next, k), -1);
      Row(std::move(terms), Sense::kLe, 0, "sub_next_day", {i, w});
    }
  }
  for (int w = 0; w < W_; ++w) {
    const int g = Gap(w);
    for (int j = 0; j < J_; ++j) {
      for (int i = 0; i < I_; ++i) {
        Row({{theta(i, w, j), 1}}, Sense::kLe,
            instance_.patients[i].Compatible(g, j) ? 1 : 0, "sub_compat",
            {w, j, i});
      }
    }
  }
  for (int b = 0; b < I_; ++b) {
    for (int w = 0; w < W_; ++w) {
      const int g = Gap(w);
      for (int i = 0; i < I_; ++i) {
        for (int j = 0; j < J_; ++j) {
          Row({{xhat(b, w, i, g, j), 1}, {theta(i, w, j), -1},
               {x(b, g, j), -1}},
              Sense::kGe, -1, "sub_link", {b, w, i, j});
        }
      }
    }
  }
  for (int b = 0; b < I_; ++b) {
    for (int w = 0; w < W_; ++w) {
      const int g = Gap(w);
      LinearTerms terms;
      for (int j = 0; j < J_; ++j) terms.emplace_back(x(b, g, j), -1);
      if (instance_.noshow_mode == NoShowMode::kFixedDelay) {
        const int target = g + instance_.fixed_delay;
        if (target < D_) {
          for (int j = 0; j < J_; ++j) {
            terms.emplace_back(xhat(b, w, b, target, j), 1);
          }
        }
      } else {
        for (int d = g + 1; d < std::min(D_, g + instance_.max_delay); ++d) {
          for (int j = 0; j < J_; ++j) {
            terms.emplace_back(xhat(b, w, b, d, j), 1);
          }
        }
      }
      Row(std::move(terms), Sense::kGe, 0, "noshow_delay", {b, w});
    }
  }
  blocks_.insert(Block::kG);
}

void ScheduleModel::AddBlockH() {
  Require(Block::kH, {Block::kG});
  for (int b = 0; b < I_; ++b) {
    for (int w = 0; w < W_; ++w) {
      for (int i = 0; i < I_; ++i) {
        LinearTerms terms;
        for (int d = 0; d < D_; ++d) {
          for (int j = 0; j < J_; ++j) {
            terms.emplace_back(xhat(b, w, i, d, j), 1);
          }
        }
        Row(std::move(terms), Sense::kLe, 1, "hat_once", {b, w, i});
      }
    }
  }
  for (int b = 0; b < I_; ++b) {
    for (int w = 0; w < W_; ++w) {
      for (int i = 0; i < I_; ++i) {
        for (int j = 0; j < J_; ++j) {
          for (int d = 0; d < D_; ++d) {
            Row({{xhat(b, w, i, d, j), 1}}, Sense::kLe,
                instance_.patients[i].Compatible(d, j) ? 1 : 0, "hat_compat",
                {b, w, i, j, d});
          }
        }
      }
    }
  }
  for (int j = 0; j < J_; ++j) {
    for (int d = 0; d < D_; ++d) {
      for (int b = 0; b < I_; ++b) {
        for (int w = 0; w < W_; ++w) {
          if (d <= Gap(w)) continue;
          LinearTerms terms;
          for (int i = 0; i < I_; ++i) {
            terms.emplace_back(xhat(b, w, i, d, j),
                               instance_.patients[i].Duration(d, j));
          }
          Row(std::move(terms), Sense::kLe, instance_.capacity(d, j),
              "hat_capacity", {j, d, b, w});
        }
      }
    }
  }
  for (int j = 0; j < J_; ++j) {
    for (int b = 0; b < I_; ++b) {
      for (int w = 0; w < W_; ++w) {
        const int g = Gap(w);
        LinearTerms terms;
        for (int i = 0; i < I_; ++i) {
          terms.emplace_back(xhat(b, w, i, g, j),
                             instance_.patients[i].Duration(g, j));
        }
        Row(std::move(terms), Sense::kLe,
            instance_.capacity(g, j) + instance_.overtime,
            "hat_capacity_overtime", {j, b, w});
      }
    }
  }
  for (int i = 0; i < I_; ++i) {
    for (int d = 0; d < D_; ++d) {
      for (int b = 0; b < I_; ++b) {
        for (int w = 0; w < W_; ++w) {
          const int g = Gap(w);
          LinearTerms terms;
          for (int j = 0; j < J_; ++j) terms.emplace_back(x(i, d, j), 1);
          for (int k = 0; k < d; ++k) {
            // The substitute moves from g + 1 to g by design.
            if (d == g + 1 && k == g) continue;
            for (int j = 0; j < J_; ++j) {
              terms.emplace_back(xhat(b, w, i, k, j), 1);
            }
          }
          Row(std::move(terms), Sense::kLe, 1, "hat_no_anticipation",
              {i, d, b, w});
        }
      }
    }
  }
  for (int b = 0; b < I_; ++b) {
    for (int w = 0; w < W_; ++w) {
      const int g = Gap(w);
      for (int i = 0; i < I_; ++i) {
        for (int j = 0; j < J_; ++j) {
          Row({{xhat(b, w, i, g, j), 1}, {x(i, g, j), -1}, {theta(i, w, j), -1}},
              Sense::kLe, 0, "hat_day_substitute", {b, w, i, j});
        }
      }
    }
  }
  for (int b = 0; b < I_; ++b) {
    for (int w = 0; w < W_; ++w) {
      const int g = Gap(w);
      for (int i = 0; i < I_; ++i) {
        for (int j = 0; j < J_; ++j) {
          Row({{xhat(b, w, i, g, j), 1}, {x(i, g, j), -1}, {x(b, g, j), -1}},
              Sense::kLe, 0, "hat_day_room", {b, w, i, j});
        }
      }
    }
  }
  for (int w = 0; w < W_; ++w) {
    for (int b = 0; b < I_; ++b) {
      for (int i = 0; i < I_; ++i) {
        LinearTerms terms;
        for (int d = 0; d < D_; ++d) {
          for (int j = 0; j < J_; ++j) {
            terms.emplace_back(xhat(b, w, i, d, j), 1);
            terms.emplace_back(x(i, d, j), -1);
          }
        }
        Row(std::move(terms), Sense::kLe, 0, "hat_no_new", {w, b, i});
      }
    }
  }
  for (int b = 0; b < I_; ++b) {
    for (int w = 0; w < W_; ++w) {
      const int g = Gap(w);
      for (int i = 0; i < I_; ++i) {
        if (i == b) continue;
        for (int j = 0; j < J_; ++j) {
          Row({{xhat(b, w, i, g, j), 1}, {x(i, g, j), -1}}, Sense::kGe, 0,
              "hat_keep", {b, w, i, j});
        }
      }
    }
  }
  blocks_.insert(Block::kH);
}

void ScheduleModel::AddCompleteModel() {
  if (!Has(Block::kA)) AddBlockA();
  AddBlockB();
  AddBlockC();
  AddBlockD();
  AddBlockE();
  AddBlockF();
  AddBlockG();
  AddBlockH();
}

namespace {

void CheckAssignment(const Instance& instance, const Assignment& a) {
  if (static_cast<int>(a.size()) != instance.num_patients()) {
    throw ModelError("assignment size differs from the patient count");
  }
  for (const auto& p : a) {
    if (p && (p->day < 0 || p->day >= instance.horizon_days || p->room < 0 ||
              p->room >= instance.rooms)) {
      throw ModelError("assignment outside the instance grid");
    }
  }
}

bool On(const Assignment& a, int i, int d) { return a[i] && a[i]->day == d; }

}  // namespace

void ScheduleModel::AddDifferenceBlock(const Assignment& x_star) {
  Require(Block::kDifference, {Block::kA});
  CheckAssignment(instance_, x_star);
  xdiff_ = Register("xdiff", {I_, D_}, true);
  x_star_diff_ = x_star;
  for (int i = 0; i < I_; ++i) {
    for (int d = 0; d < D_; ++d) {
      LinearTerms terms{{xdiff(i, d), -1}};
      for (int j = 0; j < J_; ++j) terms.emplace_back(x(i, d, j), 1);
      Row(std::move(terms), Sense::kLe, On(x_star, i, d) ? 1 : 0, "diff_up",
          {i, d});
    }
  }
  for (int i = 0; i < I_; ++i) {
    for (int d = 0; d < D_; ++d) {
      LinearTerms terms{{xdiff(i, d), -1}};
      for (int j = 0; j < J_; ++j) terms.emplace_back(x(i, d, j), -1);
      Row(std::move(terms), Sense::kLe, On(x_star, i, d) ? -1 : 0, "diff_down",
          {i, d});
    }
  }
  blocks_.insert(Block::kDifference);
}

void ScheduleModel::AddFixAdmissions(const Assignment& x_star) {
  Require(Block::kFixAdmissions, {Block::kA});
  CheckAssignment(instance_, x_star);
  for (int i = 0; i < I_; ++i) {
    for (int w = 0; w < W_; ++w) {
      const int g = Gap(w);
      LinearTerms terms;
      for (int j = 0; j < J_; ++j) terms.emplace_back(x(i, g, j), 1);
      Row(std::move(terms), Sense::kGe, On(x_star, i, g) ? 1 : 0,
          "fix_admission", {i, w});
    }
  }
  blocks_.insert(Block::kFixAdmissions);
}

void ScheduleModel::AddFixOrder(const std::vector<std::vector<int>>& orders) {
  Require(Block::kFixOrder, {Block::kB});
  if (static_cast<int>(orders.size()) != W_ * J_) {
    throw ModelError("orders must hold one list per (w, room)");
  }
  std::vector<int> position(static_cast<std::size_t>(I_) * W_ * J_, -1);
  for (int w = 0; w < W_; ++w) {
    for (int j = 0; j < J_; ++j) {
      const auto& list = orders[w * J_ + j];
      if (static_cast<int>(list.size()) > positions_) {
        throw ModelError("order longer than the position count");
      }
      for (int s = 0; s < static_cast<int>(list.size()); ++s) {
        if (list[s] < 0 || list[s] >= I_) throw ModelError("bad patient index");
        position[(static_cast<std::size_t>(list[s]) * W_ + w) * J_ + j] = s;
      }
    }
  }
  for (int i = 0; i < I_; ++i) {
    for (int w = 0; w < W_; ++w) {
      for (int j = 0; j < J_; ++j) {
        const int at = position[(static_cast<std::size_t>(i) * W_ + w) * J_ + j];
        for (int s = 0; s < positions_; ++s) {
          Row({{y(i, w, j, s), 1}}, Sense::kGe, at == s ? 1 : 0, "fix_order",
              {i, w, j, s});
        }
      }
    }
  }
  blocks_.insert(Block::kFixOrder);
}

void ScheduleModel::AddFreeze(const Assignment& x_star) {
  Require(Block::kFreeze, {Block::kA});
  CheckAssignment(instance_, x_star);
  for (int i = 0; i < I_; ++i) {
    for (int d = 0; d < D_; ++d) {
      for (int j = 0; j < J_; ++j) {
        const bool here = x_star[i] && *x_star[i] == Placement{d, j};
        Row({{x(i, d, j), 1}}, Sense::kEq, here ? 1 : 0, "freeze", {i, d, j});
      }
    }
  }
  blocks_.insert(Block::kFreeze);
}

Rational ScheduleModel::MuWeight() const {
  if (options_.mu_weight) return *options_.mu_weight;
  return Rational(static_cast<std::int64_t>(I_) * D_);
}

void ScheduleModel::SetObjective(ObjectiveKind kind) {
  std::vector<double> costs(model_.num_columns(), 0.0);
  Rational offset(0);
  Rational q_sum(0);
  for (int i = 0; i < I_; ++i) q_sum += penalties_.q(i);
  const PenaltyTable& pen = penalties_;
  switch (kind) {
    case ObjectiveKind::kNominal: {
      if (!Has(Block::kA)) throw ModelError("nominal objective needs block A");
      for (int i = 0; i < I_; ++i) {
        for (int d = 0; d < D_; ++d) {
          const double c = ToDouble(pen.p(i, d) - pen.q(i));
          for (int j = 0; j < J_; ++j) costs[x(i, d, j)] = c;
        }
      }
      offset = q_sum * static_cast<std::int64_t>(D_ * J_);
      break;
    }
    case ObjectiveKind::kDifference: {
      if (!Has(Block::kDifference)) {
        throw ModelError("difference objective needs block i");
      }
      for (int i = 0; i < I_; ++i) {
        for (int d = 0; d < D_; ++d) costs[xdiff(i, d)] = 1;
      }
      const Rational m = MuWeight();
      if (m != Rational(0)) {
        if (!Has(Block::kE)) {
          throw ModelError("dropped-patient term needs block E");
        }
        for (int h = 0; h < H_; ++h) {
          for (int w = 0; w < W_; ++w) {
            for (int l = 0; l < L_; ++l) {
              for (int i = 0; i < I_; ++i) costs[mu(h, w, l, i)] = ToDouble(m);
            }
          }
        }
      }
      break;
    }
    case ObjectiveKind::kEmergency: {
      if (!Has(Block::kE)) throw ModelError("emergency objective needs block E");
      const Rational scale(1, static_cast<std::int64_t>(H_) * W_ * L_);
      for (int h = 0; h < H_; ++h) {
        for (int w = 0; w < W_; ++w) {
          const int g = Gap(w);
          for (int l = 0; l < L_; ++l) {
            for (int i = 0; i < I_; ++i) {
              for (int d = 0; d < D_; ++d) {
                const Rational p = d > g ? pen.p(i, d) : Rational(0);
                const double c = ToDouble((p - pen.q(i)) * scale);
                for (int j = 0; j < J_; ++j) costs[xbar(h, w, l, i, d, j)] = c;
              }
            }
          }
        }
      }
      offset = q_sum * static_cast<std::int64_t>(D_ * J_);
      break;
    }
    case ObjectiveKind::kNoShow: {
      if (!Has(Block::kG)) throw ModelError("no-show objective needs block G");
      const Rational scale(D_, I_);
      for (int b = 0; b < I_; ++b) {
        for (int w = 0; w < W_; ++w) {
          for (int i = 0; i < I_; ++i) {
            for (int d = 0; d < D_; ++d) {
              const double c = ToDouble((pen.p(i, d) - pen.q(i)) * scale);
              for (int j = 0; j < J_; ++j) costs[xhat(b, w, i, d, j)] = c;
            }
          }
        }
      }
      offset = q_sum * static_cast<std::int64_t>(D_) * D_ * W_ * J_;
      break;
    }
  }
  model_.SetObjective(std::move(costs), ToDouble(offset));
  objective_ = kind;
}

namespace {

struct Occupancy {
  int rho = 1;
  int occupant = -1;
  double avail = 0;
};

// Values of (rho, lambda, Xi) for one (h, g, room) that satisfy the
// occupancy rows given start times `start` and ends `end` (zero for
// patients outside the room) and the room release.
std::vector<Occupancy> OccupancyOptions(const std::vector<double>& start,
                                        const std::vector<double>& end,
                                        double release, int h, int slots,
                                        bool cap_empty) {
  std::vector<Occupancy> out;
  const double H = slots;
  double max_end = 0;
  double min_end = std::numeric_limits<double>::infinity();
  for (double e : end) {
    max_end = std::max(max_end, e);
    min_end = std::min(min_end, e);
  }
  if (release <= h) {
    double lo = std::max(0.0, max_end - H);
    double hi = min_end + H;
    if (cap_empty) hi = std::min(hi, static_cast<double>(h));
    if (lo <= hi) {
      out.push_back({1, -1, lo});
      out.push_back({1, -1, hi});
    }
  }
  if (release >= h) {
    for (std::size_t k = 0; k < end.size(); ++k) {
      if (h != 0 && !(end[k] >= h && start[k] <= h)) continue;
      const double v = end[k];
      bool ok = true;
      for (std::size_t i = 0; i < end.size() && ok; ++i) {
        if (i == k) continue;
        ok = v >= end[i] - H && v <= end[i] + H;
      }
      if (ok) out.push_back({0, static_cast<int>(k), v});
    }
  }
  return out;
}

}  // namespace

std::vector<double> ScheduleModel::Encode(const FullSolution& sol) const {
  std::vector<double> v(model_.num_columns(), 0.0);
  CheckAssignment(instance_, sol.nominal);
  for (int i = 0; i < I_; ++i) {
    if (sol.nominal[i]) v[x(i, sol.nominal[i]->day, sol.nominal[i]->room)] = 1;
  }

  // Start times per (w, j, i), zero when i is not in the room.
  std::vector<double> start(static_cast<std::size_t>(W_) * J_ * I_, 0.0);
  std::vector<double> end(start.size(), 0.0);
  std::vector<double> rel(static_cast<std::size_t>(W_) * J_, 0.0);
  auto cell = [&](int w, int j, int i) {
    return (static_cast<std::size_t>(w) * J_ + j) * I_ + i;
  };
  if (Has(Block::kB)) {
    const auto orders =
        sol.orders.empty() ? ShortestFirstOrders(instance_, sol.nominal)
                           : sol.orders;
    if (static_cast<int>(orders.size()) != W_ * J_) {
      throw ModelError("orders must hold one list per (w, room)");
    }
    for (int w = 0; w < W_; ++w) {
      const int g = Gap(w);
      for (int j = 0; j < J_; ++j) {
        const auto& list = orders[w * J_ + j];
        if (static_cast<int>(list.size()) > positions_) {
          throw ModelError("order longer than the position count");
        }
        double next = 1;
        for (int s = 0; s < static_cast<int>(list.size()); ++s) {
          const int i = list[s];
          if (!sol.nominal[i] || *sol.nominal[i] != Placement{g, j}) {
            throw ModelError("ordered patient not assigned to its room");
          }
          v[y(i, w, j, s)] = 1;
          for (int n = 0; n < s; ++n) v[nu(i, list[n], w, j)] = 1;
          start[cell(w, j, i)] = next;
          v[xi(i, w, j)] = next;
          next += instance_.patients[i].Duration(g, j);
          end[cell(w, j, i)] = next;
        }
        rel[w * J_ + j] = list.empty() ? 0 : next;
      }
    }
  }
  if (Has(Block::kC)) {
    for (int w = 0; w < W_; ++w) {
      for (int j = 0; j < J_; ++j) {
        v[release(w, j)] = rel[w * J_ + j];
        const std::vector<double> s(start.begin() + cell(w, j, 0),
                                    start.begin() + cell(w, j, 0) + I_);
        const std::vector<double> e(end.begin() + cell(w, j, 0),
                                    end.begin() + cell(w, j, 0) + I_);
        for (int h = 0; h < H_; ++h) {
          auto options = OccupancyOptions(s, e, rel[w * J_ + j], h, H_,
                                          options_.cap_empty_room_availability);
          if (options.empty()) continue;  // leaves an infeasible hint
          const bool is_eta =
              Has(Block::kD) && !sol.emergency_room.empty() &&
              sol.emergency_room[h * W_ + w] == j;
          const bool want_min = is_eta || !Has(Block::kD);
          const Occupancy* pick = &options.front();
          for (const Occupancy& o : options) {
            if (want_min ? o.avail < pick->avail : o.avail > pick->avail) {
              pick = &o;
            }
          }
          v[rho(h, w, j)] = pick->rho;
          if (pick->occupant >= 0) v[lambda(pick->occupant, w, j, h)] = 1;
          v[avail(h, w, j)] = pick->avail;
        }
      }
    }
  }
  if (Has(Block::kD)) {
    if (static_cast<int>(sol.emergency_room.size()) != H_ * W_) {
      throw ModelError("emergency_room must hold one room per (h, w)");
    }
    for (int h = 0; h < H_; ++h) {
      for (int w = 0; w < W_; ++w) v[eta(h, w, sol.emergency_room[h * W_ + w])] = 1;
    }
  }
  if (Has(Block::kE)) {
    if (static_cast<int>(sol.emergency_plans.size()) != H_ * W_ * L_) {
      throw ModelError("emergency_plans must hold one plan per (h, w, l)");
    }
    for (int h = 0; h < H_; ++h) {
      for (int w = 0; w < W_; ++w) {
        for (int i = 0; i < I_; ++i) {
          double total = 0;
          for (int j = 0; j < J_; ++j) total += start[cell(w, j, i)];
          v[chi(h, w, i)] = total > h ? 1 : 0;
        }
        for (int l = 0; l < L_; ++l) {
          const Assignment& plan = sol.emergency_plans[(h * W_ + w) * L_ + l];
          CheckAssignment(instance_, plan);
          for (int i = 0; i < I_; ++i) {
            if (plan[i]) v[xbar(h, w, l, i, plan[i]->day, plan[i]->room)] = 1;
            if (sol.nominal[i]) {
              const int d = sol.nominal[i]->day;
              const bool kept = plan[i] && plan[i]->day >= d &&
                                plan[i]->day <= d + instance_.max_delay;
              v[mu(h, w, l, i)] = kept ? 0 : 1;
            }
          }
        }
      }
    }
  }
  if (Has(Block::kG)) {
    if (static_cast<int>(sol.noshow_plans.size()) != I_ * W_ ||
        static_cast<int>(sol.substitutes.size()) != W_ * J_) {
      throw ModelError("no-show plans or substitutes have the wrong size");
    }
    for (int b = 0; b < I_; ++b) {
      for (int w = 0; w < W_; ++w) {
        const Assignment& plan = sol.noshow_plans[b * W_ + w];
        CheckAssignment(instance_, plan);
        for (int i = 0; i < I_; ++i) {
          if (plan[i]) v[xhat(b, w, i, plan[i]->day, plan[i]->room)] = 1;
        }
      }
    }
    for (int w = 0; w < W_; ++w) {
      for (int j = 0; j < J_; ++j) {
        if (sol.substitutes[w * J_ + j]) {
          v[theta(*sol.substitutes[w * J_ + j], w, j)] = 1;
        }
      }
    }
  }
  if (Has(Block::kDifference)) {
    for (int i = 0; i < I_; ++i) {
      for (int d = 0; d < D_; ++d) {
        v[xdiff(i, d)] = On(sol.nominal, i, d) != On(x_star_diff_, i, d) ? 1 : 0;
      }
    }
  }
  return v;
}

FullSolution ScheduleModel::Decode(const std::vector<double>& v) const {
  if (static_cast<int>(v.size()) != model_.num_columns()) {
    throw ModelError("value vector size differs from the column count");
  }
  auto on = [&](int column) { return column >= 0 && v[column] > 0.5; };
  FullSolution sol;
  sol.nominal.assign(I_, std::nullopt);
  for (int i = 0; i < I_; ++i) {
    for (int d = 0; d < D_ && !sol.nominal[i]; ++d) {
      for (int j = 0; j < J_; ++j) {
        if (on(x(i, d, j))) {
          sol.nominal[i] = Placement{d, j};
          break;
        }
      }
    }
  }
  if (Has(Block::kB)) {
    sol.orders.assign(static_cast<std::size_t>(W_) * J_, {});
    for (int w = 0; w < W_; ++w) {
      for (int j = 0; j < J_; ++j) {
        std::vector<std::pair<int, int>> seen;
        for (int i = 0; i < I_; ++i) {
          for (int s = 0; s < positions_; ++s) {
            if (on(y(i, w, j, s))) seen.emplace_back(s, i);
          }
        }
        std::sort(seen.begin(), seen.end());
        for (const auto& [s, i] : seen) sol.orders[w * J_ + j].push_back(i);
      }
    }
  }
  if (Has(Block::kD)) {
    sol.emergency_room.assign(static_cast<std::size_t>(H_) * W_, 0);
    for (int h = 0; h < H_; ++h) {
      for (int w = 0; w < W_; ++w) {
        for (int j = 0; j < J_; ++j) {
          if (on(eta(h, w, j))) sol.emergency_room[h * W_ + w] = j;
        }
      }
    }
  }
  auto read_plan = [&](auto column) {
    Assignment plan(I_);
    for (int i = 0; i < I_; ++i) {
      for (int d = 0; d < D_ && !plan[i]; ++d) {
        for (int j = 0; j < J_; ++j) {
          if (on(column(i, d, j))) {
            plan[i] = Placement{d, j};
            break;
          }
        }
      }
    }
    return plan;
  };
  if (Has(Block::kE)) {
    for (int h = 0; h < H_; ++h) {
      for (int w = 0; w < W_; ++w) {
        for (int l = 0; l < L_; ++l) {
          sol.emergency_plans.push_back(read_plan(
              [&](int i, int d, int j) { return xbar(h, w, l, i, d, j); }));
          std::vector<int> dropped;
          for (int i = 0; i < I_; ++i) {
            if (on(mu(h, w, l, i))) dropped.push_back(i);
          }
          sol.dropped.push_back(std::move(dropped));
        }
      }
    }
  }
  if (Has(Block::kG)) {
    for (int b = 0; b < I_; ++b) {
      for (int w = 0; w < W_; ++w) {
        sol.noshow_plans.push_back(read_plan(
            [&](int i, int d, int j) { return xhat(b, w, i, d, j); }));
      }
    }
    sol.substitutes.assign(static_cast<std::size_t>(W_) * J_, std::nullopt);
    for (int w = 0; w < W_; ++w) {
      for (int j = 0; j < J_; ++j) {
        for (int i = 0; i < I_; ++i) {
          if (on(theta(i, w, j))) sol.substitutes[w * J_ + j] = i;
        }
      }
    }
  }
  return sol;
}

Rational ScheduleModel::ExactObjective(ObjectiveKind kind,
                                       const FullSolution& sol) const {
  switch (kind) {
    case ObjectiveKind::kNominal:
      return NominalObjective(instance_, penalties_, sol.nominal);
    case ObjectiveKind::kDifference: {
      Rational total(0);
      for (int i = 0; i < I_; ++i) {
        for (int d = 0; d < D_; ++d) {
          if (On(sol.nominal, i, d) != On(x_star_diff_, i, d)) total += 1;
        }
      }
      std::int64_t dropped = 0;
      for (const auto& list : sol.dropped) dropped += list.size();
      return total + MuWeight() * dropped;
    }
    case ObjectiveKind::kEmergency: {
      Rational total(0);
      for (int h = 0; h < H_; ++h) {
        for (int w = 0; w < W_; ++w) {
          for (int l = 0; l < L_; ++l) {
            total += EmergencyScenarioCost(
                instance_, penalties_, Gap(w),
                sol.emergency_plans[(h * W_ + w) * L_ + l]);
          }
        }
      }
      return total / static_cast<std::int64_t>(H_ * W_ * L_);
    }
    case ObjectiveKind::kNoShow: {
      Rational total(0);
      for (const Assignment& plan : sol.noshow_plans) {
        total += NoShowScenarioCost(instance_, penalties_, plan);
      }
      return total * Rational(D_, I_);
    }
  }
  return Rational(0);
}

}  // namespace orsched
