#pragma once

#include <functional>
#include <memory>
#include <string>

#include "coverfollow/drl/ddpg.hpp"
#include "coverfollow/env.hpp"

namespace coverfollow::harness {

/// Chooses the velocity command for the current environment state.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual VelocityCommand act(const NavigationEnv& env, Rng& rng) = 0;
};

/// Classic dynamic-window baseline; brakes when nothing is admissible.
class DwaPolicy final : public Policy {
 public:
  std::string name() const override { return "dwa"; }
  VelocityCommand act(const NavigationEnv& env, Rng& rng) override;
};

/// Uniform raw actions projected onto the feasible window.
class RandomPolicy final : public Policy {
 public:
  std::string name() const override { return "random"; }
  VelocityCommand act(const NavigationEnv& env, Rng& rng) override;
};

/// Deterministic actor output projected onto the feasible window.
class AgentPolicy final : public Policy {
 public:
  explicit AgentPolicy(drl::Agent agent, std::string name = "agent")
      : agent_(std::move(agent)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  VelocityCommand act(const NavigationEnv& env, Rng& rng) override;
  const drl::Agent& agent() const { return agent_; }

 private:
  drl::Agent agent_;
  std::string name_;
};

/// Arbitrary command function, used for fixed behaviors (stand still, drive
/// straight). Commands are executed as given.
class ScriptedPolicy final : public Policy {
 public:
  using Fn = std::function<VelocityCommand(const NavigationEnv&)>;
  ScriptedPolicy(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
  std::string name() const override { return name_; }
  VelocityCommand act(const NavigationEnv& env, Rng&) override { return fn_(env); }

 private:
  std::string name_;
  Fn fn_;
};

}  // namespace coverfollow::harness
