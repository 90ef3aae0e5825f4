#include "ep/core/class_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

namespace ep::core {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

double to_real(const std::string& tok, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ClassFormatError(line, "expected a number, got '" + tok + "'");
  }
  return v;
}

std::size_t to_index(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ClassFormatError(line, "expected a nonnegative integer, got '" + tok + "'");
  }
  return v;
}

struct EnvBlock {
  std::size_t start_line = 0;
  double weight = 0.0;
  std::optional<std::size_t> states;
  std::optional<std::size_t> actions;
  std::size_t initial = 0;
  RewardModel model = RewardModel::deterministic;
  std::vector<double> transition;
  std::vector<double> reward;
  std::vector<bool> have_transition;
  std::vector<bool> have_reward;

  void allocate(std::size_t line) {
    if (!states || !actions) {
      throw ClassFormatError(line, "'states' and 'actions' must precede T and R rows");
    }
    if (transition.empty()) {
      transition.assign(*states * *actions * *states, 0.0);
      reward.assign(*states * *actions, 0.0);
      have_transition.assign(*states * *actions, false);
      have_reward.assign(*states, false);
    }
  }
};

FiniteEnvironment finish(EnvBlock& block, std::size_t line) {
  if (!block.states || !block.actions) {
    throw ClassFormatError(line, "environment is missing 'states' or 'actions'");
  }
  block.allocate(line);
  for (std::size_t i = 0; i < block.have_transition.size(); ++i) {
    if (!block.have_transition[i]) {
      throw ClassFormatError(line, "missing T row for state " + std::to_string(i / *block.actions) +
                                       ", action " + std::to_string(i % *block.actions));
    }
  }
  for (std::size_t s = 0; s < block.have_reward.size(); ++s) {
    if (!block.have_reward[s]) {
      throw ClassFormatError(line, "missing R row for state " + std::to_string(s));
    }
  }
  try {
    return FiniteEnvironment(*block.states, *block.actions, std::move(block.transition),
                             std::move(block.reward), block.initial, block.model);
  } catch (const std::invalid_argument& e) {
    throw ClassFormatError(block.start_line, e.what());
  }
}

}  // namespace

FiniteEnvironmentClass parse_class(std::istream& in) {
  std::vector<FiniteEnvironment> envs;
  std::vector<double> weights;
  std::optional<EnvBlock> block;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (key == "env") {
      if (block) throw ClassFormatError(lineno, "'env' inside an unterminated block");
      if (tok.size() != 2) throw ClassFormatError(lineno, "usage: env <weight>");
      block.emplace();
      block->start_line = lineno;
      block->weight = to_real(tok[1], lineno);
      if (!(block->weight > 0.0)) throw ClassFormatError(lineno, "weight must be positive");
      continue;
    }
    if (!block) throw ClassFormatError(lineno, "'" + key + "' outside an env block");
    if (key == "end") {
      if (tok.size() != 1) throw ClassFormatError(lineno, "unexpected tokens after 'end'");
      envs.push_back(finish(*block, lineno));
      weights.push_back(block->weight);
      block.reset();
    } else if (key == "states" || key == "actions" || key == "initial") {
      if (tok.size() != 2) throw ClassFormatError(lineno, "usage: " + key + " <n>");
      if (!block->transition.empty()) {
        throw ClassFormatError(lineno, "'" + key + "' after T/R rows");
      }
      const std::size_t v = to_index(tok[1], lineno);
      if (key == "initial") {
        block->initial = v;
      } else {
        if (v == 0) throw ClassFormatError(lineno, key + " must be positive");
        (key == "states" ? block->states : block->actions) = v;
      }
    } else if (key == "rewards") {
      if (tok.size() != 2) throw ClassFormatError(lineno, "usage: rewards deterministic|bernoulli");
      if (tok[1] == "deterministic") {
        block->model = RewardModel::deterministic;
      } else if (tok[1] == "bernoulli") {
        block->model = RewardModel::bernoulli;
      } else {
        throw ClassFormatError(lineno, "unknown reward model '" + tok[1] + "'");
      }
    } else if (key == "T") {
      block->allocate(lineno);
      const std::size_t S = *block->states;
      const std::size_t A = *block->actions;
      if (tok.size() != 3 + S) {
        throw ClassFormatError(lineno, "T row needs a state, an action and " + std::to_string(S) +
                                           " probabilities");
      }
      const std::size_t s = to_index(tok[1], lineno);
      const std::size_t a = to_index(tok[2], lineno);
      if (s >= S || a >= A) throw ClassFormatError(lineno, "T row index out of range");
      if (block->have_transition[s * A + a]) throw ClassFormatError(lineno, "duplicate T row");
      block->have_transition[s * A + a] = true;
      for (std::size_t next = 0; next < S; ++next) {
        block->transition[(s * A + a) * S + next] = to_real(tok[3 + next], lineno);
      }
    } else if (key == "R") {
      block->allocate(lineno);
      const std::size_t A = *block->actions;
      if (tok.size() != 2 + A) {
        throw ClassFormatError(lineno, "R row needs a state and " + std::to_string(A) + " rewards");
      }
      const std::size_t s = to_index(tok[1], lineno);
      if (s >= *block->states) throw ClassFormatError(lineno, "R row state out of range");
      if (block->have_reward[s]) throw ClassFormatError(lineno, "duplicate R row");
      block->have_reward[s] = true;
      for (std::size_t a = 0; a < A; ++a) {
        block->reward[s * A + a] = to_real(tok[2 + a], lineno);
      }
    } else {
      throw ClassFormatError(lineno, "unknown keyword '" + key + "'");
    }
  }
  if (block) throw ClassFormatError(lineno, "missing 'end' for env block");
  if (envs.empty()) throw ClassFormatError(lineno, "no environments");

  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  try {
    return FiniteEnvironmentClass(std::move(envs), std::move(weights));
  } catch (const std::invalid_argument& e) {
    throw ClassFormatError(lineno, e.what());
  }
}

FiniteEnvironmentClass load_class(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open class file " + path.string());
  }
  return parse_class(in);
}

std::string write_class(const FiniteEnvironmentClass& cls) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto& env = cls[i];
    out << "env " << cls.prior()[i] << '\n';
    out << "  states " << env.state_count() << '\n';
    out << "  actions " << env.action_count() << '\n';
    out << "  initial " << env.initial_state() << '\n';
    out << "  rewards "
        << (env.reward_model() == RewardModel::bernoulli ? "bernoulli" : "deterministic") << '\n';
    for (std::size_t s = 0; s < env.state_count(); ++s) {
      for (std::size_t a = 0; a < env.action_count(); ++a) {
        out << "  T " << s << ' ' << a;
        for (double p : env.transition_row(s, a)) out << ' ' << p;
        out << '\n';
      }
    }
    for (std::size_t s = 0; s < env.state_count(); ++s) {
      out << "  R " << s;
      for (std::size_t a = 0; a < env.action_count(); ++a) out << ' ' << env.reward(s, a);
      out << '\n';
    }
    out << "end\n";
  }
  return out.str();
}

}  // namespace ep::core
