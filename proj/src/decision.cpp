#include "nsbayes/decision.hpp"

#include <algorithm>
#include <numeric>

namespace nsbayes {

template <OrderedScalar T>
FiniteProblemT<T> FiniteProblemT<T>::create(std::vector<StateInfo> states,
                                            std::vector<std::string> observations,
                                            std::vector<ActionInfo> actions, Matrix<T> model,
                                            Matrix<T> loss) {
  if (states.empty() || observations.empty() || actions.empty()) {
    throw MalformedProblem("states, observations and actions must be nonempty");
  }
  if (model.size() != states.size() || loss.size() != states.size()) {
    throw MalformedProblem("model and loss need one row per state");
  }
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (model[s].size() != observations.size()) {
      throw MalformedProblem("model row " + std::to_string(s) + " has wrong length");
    }
    if (loss[s].size() != actions.size()) {
      throw MalformedProblem("loss row " + std::to_string(s) + " has wrong length");
    }
    const T zero = ScalarOps<T>::lift(0, model[s][0]);
    const T one = ScalarOps<T>::lift(1, model[s][0]);
    T total = zero;
    for (const T& v : model[s]) {
      if (v < zero || v > one) {
        throw MalformedProblem("model entry outside [0,1] in row " + std::to_string(s));
      }
      total = total + v;
    }
    if (!(total == one)) throw MalformedProblem("model row " + std::to_string(s) + " does not sum to 1");
    for (const T& v : loss[s]) {
      if (v < ScalarOps<T>::lift(0, v)) {
        throw MalformedProblem("negative loss in row " + std::to_string(s));
      }
    }
  }
  FiniteProblemT out;
  out.states_ = std::move(states);
  out.observations_ = std::move(observations);
  out.actions_ = std::move(actions);
  out.model_ = std::move(model);
  out.loss_ = std::move(loss);
  return out;
}

template <OrderedScalar T>
bool FiniteProblemT<T>::has_action_embedding() const {
  return std::all_of(actions_.begin(), actions_.end(), [](const ActionInfo& a) { return a.value.has_value(); });
}

template class FiniteProblemT<Rational>;
template class FiniteProblemT<LCNumber>;

Procedure Procedure::nonrandomized(std::vector<std::size_t> map, std::size_t num_actions) {
  for (std::size_t a : map) {
    if (a >= num_actions) throw ShapeMismatch("procedure maps to action " + std::to_string(a) + " out of range");
  }
  Procedure p;
  p.num_observations_ = map.size();
  p.num_actions_ = num_actions;
  p.rule_ = std::move(map);
  return p;
}

Procedure Procedure::randomized(Matrix<Rational> matrix) {
  if (matrix.empty() || matrix.front().empty()) throw ShapeMismatch("empty procedure matrix");
  const std::size_t cols = matrix.front().size();
  for (std::size_t x = 0; x < matrix.size(); ++x) {
    if (matrix[x].size() != cols) throw ShapeMismatch("ragged procedure matrix");
    Rational total;
    for (const Rational& v : matrix[x]) {
      if (v < 0 || v > 1) throw WeightError("procedure entry outside [0,1] in row " + std::to_string(x));
      total += v;
    }
    if (total != 1) throw WeightError("procedure row " + std::to_string(x) + " does not sum to 1");
  }
  Procedure p;
  p.num_observations_ = matrix.size();
  p.num_actions_ = cols;
  p.rule_ = std::move(matrix);
  return p;
}

Procedure Procedure::simplified(Matrix<Rational> matrix) {
  Procedure p = randomized(std::move(matrix));
  std::vector<std::size_t> map;
  for (const auto& row : p.matrix()) {
    auto it = std::find(row.begin(), row.end(), Rational(1));
    if (it == row.end()) return p;
    map.push_back(static_cast<std::size_t>(it - row.begin()));
  }
  return nonrandomized(std::move(map), p.num_actions_);
}

Rational Procedure::probability(std::size_t obs, std::size_t action) const {
  if (is_randomized()) return matrix().at(obs).at(action);
  return map().at(obs) == action ? Rational(1) : Rational(0);
}

Matrix<Rational> Procedure::as_matrix() const {
  if (is_randomized()) return matrix();
  Matrix<Rational> out(num_observations_, std::vector<Rational>(num_actions_));
  for (std::size_t x = 0; x < num_observations_; ++x) out[x][map()[x]] = 1;
  return out;
}

void Procedure::check_shape(std::size_t num_observations, std::size_t num_actions) const {
  if (num_observations != num_observations_ || num_actions != num_actions_) {
    throw ShapeMismatch("procedure is " + std::to_string(num_observations_) + "x" +
                        std::to_string(num_actions_) + ", problem needs " +
                        std::to_string(num_observations) + "x" + std::to_string(num_actions));
  }
}

Procedure convex_combine(std::span<const Procedure> procedures, std::span<const Rational> weights) {
  if (procedures.empty() || procedures.size() != weights.size()) {
    throw WeightError("need one weight per procedure");
  }
  Rational total;
  for (const Rational& w : weights) {
    if (w < 0) throw WeightError("negative mixture weight");
    total += w;
  }
  if (total != 1) throw WeightError("mixture weights do not sum to 1");
  const std::size_t nx = procedures.front().num_observations();
  const std::size_t na = procedures.front().num_actions();
  if (procedures.size() == 1) return procedures.front();
  Matrix<Rational> mix(nx, std::vector<Rational>(na));
  for (std::size_t i = 0; i < procedures.size(); ++i) {
    procedures[i].check_shape(nx, na);
    if (weights[i] == 0) continue;
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t a = 0; a < na; ++a) {
        const Rational pr = procedures[i].probability(x, a);
        if (pr != 0) mix[x][a] += weights[i] * pr;
      }
    }
  }
  return Procedure::randomized(std::move(mix));
}

namespace {

void require_embedding(const FiniteProblem& p) {
  if (!p.has_action_embedding()) throw NoEmbedding("actions carry no numeric values");
}

Rational row_mean(const FiniteProblem& p, const std::vector<Rational>& row) {
  Rational mean;
  for (std::size_t a = 0; a < row.size(); ++a) {
    if (row[a] != 0) mean += row[a] * *p.actions()[a].value;
  }
  return mean;
}

std::size_t nearest_action(const FiniteProblem& p, const Rational& target) {
  std::size_t best = 0;
  Rational best_dist = abs(Rational(*p.actions()[0].value - target));
  for (std::size_t a = 1; a < p.num_actions(); ++a) {
    Rational dist = abs(Rational(*p.actions()[a].value - target));
    if (dist < best_dist) {
      best = a;
      best_dist = dist;
    }
  }
  return best;
}

}  // namespace

Procedure derandomize(const FiniteProblem& p, const Procedure& d) {
  require_embedding(p);
  d.check_shape(p.num_observations(), p.num_actions());
  if (!d.is_randomized()) return d;
  std::vector<std::size_t> map;
  for (const auto& row : d.matrix()) map.push_back(nearest_action(p, row_mean(p, row)));
  return Procedure::nonrandomized(std::move(map), p.num_actions());
}

bool derandomization_is_exact(const FiniteProblem& p, const Procedure& d) {
  require_embedding(p);
  d.check_shape(p.num_observations(), p.num_actions());
  if (!d.is_randomized()) return true;
  for (const auto& row : d.matrix()) {
    const Rational mean = row_mean(p, row);
    if (*p.actions()[nearest_action(p, mean)].value != mean) return false;
  }
  return true;
}

bool loss_convex_along_embedding(const FiniteProblem& p) {
  require_embedding(p);
  std::vector<std::size_t> idx(p.num_actions());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return *p.actions()[a].value < *p.actions()[b].value; });
  for (std::size_t s = 0; s < p.num_states(); ++s) {
    std::optional<Rational> prev_slope;
    for (std::size_t k = 1; k < idx.size(); ++k) {
      const Rational& v0 = *p.actions()[idx[k - 1]].value;
      const Rational& v1 = *p.actions()[idx[k]].value;
      if (v0 == v1) {
        if (p.loss(s, idx[k - 1]) != p.loss(s, idx[k])) return false;
        continue;
      }
      Rational slope = (p.loss(s, idx[k]) - p.loss(s, idx[k - 1])) / (v1 - v0);
      if (prev_slope && slope < *prev_slope) return false;
      prev_slope = slope;
    }
  }
  return true;
}

LCFiniteProblem lift_problem(const FiniteProblem& p, int order) {
  auto lift = [order](const Matrix<Rational>& m) {
    Matrix<LCNumber> out;
    for (const auto& row : m) {
      std::vector<LCNumber> r;
      for (const auto& v : row) r.emplace_back(v, order);
      out.push_back(std::move(r));
    }
    return out;
  };
  return LCFiniteProblem::create(p.states(), p.observations(), p.actions(), lift(p.model()), lift(p.loss()));
}

}  // namespace nsbayes
