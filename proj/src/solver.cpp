#include "invgen/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <mutex>

#include "invgen/errors.hpp"
#include "invgen/sygus.hpp"

extern char** environ;

namespace invgen {

namespace {

/// `name` itself when it contains a slash, else the first match on $PATH.
std::optional<std::string> find_executable(const std::string& name) {
  if (name.find('/') != std::string::npos) {
    if (::access(name.c_str(), X_OK) == 0) return name;
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  if (!path) return std::nullopt;
  std::string_view rest(path);
  while (!rest.empty()) {
    auto colon = rest.find(':');
    auto candidate = std::filesystem::path(std::string(rest.substr(0, colon))) / name;
    if (::access(candidate.c_str(), X_OK) == 0) return candidate.string();
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }
  return std::nullopt;
}

}  // namespace

std::string resolve_solver_path(const std::string& flag) {
  std::string wanted = flag;
  if (wanted.empty())
    if (const char* env = std::getenv("SOLVER_PATH"); env && *env) wanted = env;
  if (wanted.empty()) {
    if (auto z3 = find_executable("z3")) return *z3;
    throw Error("no SMT solver found: pass --solver-path or set SOLVER_PATH");
  }
  if (auto found = find_executable(wanted)) return *found;
  throw Error("solver not executable: " + wanted);
}

// ---------------------------------------------------------------------------

class SolverSession::Process {
 public:
  Process(const std::string& path, const std::vector<std::string>& args) {
    static std::once_flag ignore_sigpipe;
    std::call_once(ignore_sigpipe, [] { ::signal(SIGPIPE, SIG_IGN); });

    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno));
    if (::pipe(from_child) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw SolverError(std::string("pipe: ") + std::strerror(errno));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, to_child[0], 0);
    posix_spawn_file_actions_adddup2(&actions, from_child[1], 1);
    posix_spawn_file_actions_addopen(&actions, 2, "/dev/null", O_WRONLY, 0);
    posix_spawn_file_actions_addclose(&actions, to_child[1]);
    posix_spawn_file_actions_addclose(&actions, from_child[0]);

    std::vector<std::string> argv_storage{path};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());
    argv.push_back(nullptr);

    int rc = ::posix_spawnp(&pid_, path.c_str(), &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(to_child[0]);
    ::close(from_child[1]);
    if (rc != 0) {
      ::close(to_child[1]);
      ::close(from_child[0]);
      throw SolverError("cannot start solver '" + path + "': " + std::strerror(rc));
    }
    in_ = to_child[1];
    out_ = from_child[0];
    ::fcntl(in_, F_SETFD, FD_CLOEXEC);
    ::fcntl(out_, F_SETFD, FD_CLOEXEC);
  }

  ~Process() {
    if (in_ >= 0) {
      const char bye[] = "(exit)\n";
      [[maybe_unused]] auto n = ::write(in_, bye, sizeof(bye) - 1);
      ::close(in_);
    }
    if (out_ >= 0) ::close(out_);
    if (pid_ > 0) {
      // Give the solver a moment to exit cleanly, then kill it.
      for (int i = 0; i < 50; ++i) {
        if (::waitpid(pid_, nullptr, WNOHANG) == pid_) return;
        ::usleep(2000);
      }
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
    }
  }

  void kill() {
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
      pid_ = -1;
    }
  }

  void send(const std::string& text) {
    const char* p = text.data();
    std::size_t left = text.size();
    while (left > 0) {
      ssize_t n = ::write(in_, p, left);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw SolverError(std::string("write to solver failed: ") + std::strerror(errno));
      }
      p += n;
      left -= static_cast<std::size_t>(n);
    }
  }

  /// Reads one complete response (an atom or a balanced list).
  /// Returns nullopt when `deadline` passes first.
  std::optional<std::string> receive(std::chrono::steady_clock::time_point deadline) {
    for (;;) {
      if (auto r = extract()) return r;
      auto now = std::chrono::steady_clock::now();
      if (now >= deadline) return std::nullopt;
      auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
      pollfd pfd{out_, POLLIN, 0};
      int rc = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(wait + 1, 1 << 30)));
      if (rc < 0) {
        if (errno == EINTR) continue;
        throw SolverError(std::string("poll failed: ") + std::strerror(errno));
      }
      if (rc == 0) continue;
      char chunk[4096];
      ssize_t n = ::read(out_, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR) continue;
        throw SolverError(std::string("read from solver failed: ") + std::strerror(errno));
      }
      if (n == 0) throw SolverError("solver terminated unexpectedly");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  std::optional<std::string> extract() {
    std::size_t i = 0;
    while (i < buffer_.size() && std::isspace(static_cast<unsigned char>(buffer_[i]))) ++i;
    if (i == buffer_.size()) return std::nullopt;
    std::size_t start = i;
    if (buffer_[i] == '(') {
      int depth = 0;
      for (; i < buffer_.size(); ++i) {
        char c = buffer_[i];
        if (c == '"') {
          for (++i; i < buffer_.size() && buffer_[i] != '"'; ++i) {}
          if (i == buffer_.size()) return std::nullopt;
        } else if (c == '|') {
          for (++i; i < buffer_.size() && buffer_[i] != '|'; ++i) {}
          if (i == buffer_.size()) return std::nullopt;
        } else if (c == '(') {
          ++depth;
        } else if (c == ')') {
          if (--depth == 0) {
            std::string out = buffer_.substr(start, i + 1 - start);
            buffer_.erase(0, i + 1);
            return out;
          }
        }
      }
      return std::nullopt;
    }
    while (i < buffer_.size() && !std::isspace(static_cast<unsigned char>(buffer_[i]))) ++i;
    if (i == buffer_.size()) return std::nullopt;  // atom may continue
    std::string out = buffer_.substr(start, i - start);
    buffer_.erase(0, i);
    return out;
  }

  pid_t pid_ = -1;
  int in_ = -1;
  int out_ = -1;
  std::string buffer_;
};

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> default_args(const std::string& path) {
  std::string base = std::filesystem::path(path).filename().string();
  if (base.find("z3") != std::string::npos) return {"-in", "-smt2"};
  if (base.find("cvc5") != std::string::npos || base.find("cvc4") != std::string::npos)
    return {"--lang=smt2", "--incremental"};
  return {};
}

bool is_z3(const std::string& path) {
  return std::filesystem::path(path).filename().string().find("z3") != std::string::npos;
}

Value parse_value(const SExpr& e, Sort sort) {
  if (sort == Sort::Bool) {
    if (e.is("true")) return true;
    if (e.is("false")) return false;
  } else if (e.is_atom) {
    if (!e.atom.empty() && std::all_of(e.atom.begin(), e.atom.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return Integer(e.atom);
  } else if (e.items.size() == 2 && e.items[0].is("-") && e.items[1].is_atom) {
    return Integer(-Integer(e.items[1].atom));
  }
  throw SolverError("cannot interpret solver value");
}

/// Pops the scope it opened unless the session got poisoned meanwhile.
class ScopeGuard {
 public:
  explicit ScopeGuard(SolverSession& s) : s_(s) { s_.push(); }
  ~ScopeGuard() {
    if (!s_.poisoned()) {
      try {
        s_.pop();
      } catch (...) {
      }
    }
  }
  ScopeGuard(const ScopeGuard&) = delete;
  ScopeGuard& operator=(const ScopeGuard&) = delete;

 private:
  SolverSession& s_;
};

}  // namespace

SolverSession::SolverSession(SolverOptions options) : options_(std::move(options)), rng_(options_.seed) {
  if (options_.path.empty()) options_.path = resolve_solver_path();
  auto args = options_.args.empty() ? default_args(options_.path) : options_.args;
  process_ = std::make_unique<Process>(options_.path, args);
  command("(set-option :print-success true)");
  command("(set-option :produce-models true)");
  command("(set-logic " + options_.logic + ")");
  if (is_z3(options_.path)) command("(set-option :timeout " + std::to_string(options_.timeout.count()) + ")");
}

SolverSession::~SolverSession() = default;

void SolverSession::ensure_live() const {
  if (poisoned_) throw SolverError("solver session is poisoned");
}

void SolverSession::poison(const std::string& why) {
  poisoned_ = true;
  if (process_) process_->kill();
  throw SolverError(why);
}

std::string SolverSession::exchange(const std::string& cmd) {
  ensure_live();
  // Solver-side timeouts are enforced by the solver; this is a watchdog on top.
  auto deadline = std::chrono::steady_clock::now() + options_.timeout + std::chrono::milliseconds(3000);
  std::optional<std::string> reply;
  try {
    process_->send(cmd + "\n");
    reply = process_->receive(deadline);
  } catch (const SolverError& e) {
    poison(e.what());
  }
  if (!reply) {
    poisoned_ = true;
    process_->kill();
    throw SolverUnknown("solver did not answer within the time limit");
  }
  if (reply->rfind("(error", 0) == 0) poison("solver error on '" + cmd + "': " + *reply);
  return *reply;
}

void SolverSession::command(const std::string& cmd) {
  auto reply = exchange(cmd);
  if (reply != "success") poison("unexpected solver reply '" + reply + "' to '" + cmd + "'");
}

void SolverSession::push() {
  command("(push 1)");
  scopes_.emplace_back();
}

void SolverSession::pop() {
  if (scopes_.empty()) throw std::logic_error("pop on an empty scope stack");
  command("(pop 1)");
  for (const auto& name : scopes_.back()) declared_.erase(name);
  scopes_.pop_back();
}

void SolverSession::declare(const Variable& v) {
  if (declared_.count(v.name)) return;
  command("(declare-fun " + print_term(Term::var(v.name)) + " () " + std::string(sort_name(v.sort)) + ")");
  declared_.emplace(v.name, v.sort);
  if (!scopes_.empty()) scopes_.back().push_back(v.name);
}

void SolverSession::assert_term(const Term& t) {
  if (contains_call(t)) throw std::logic_error("relation calls must be inlined before solving");
  command("(assert " + print_term(t) + ")");
}

SatResult SolverSession::check_sat() {
  ++num_checks_;
  auto reply = exchange("(check-sat)");
  if (reply == "sat") return SatResult::Sat;
  if (reply == "unsat") return SatResult::Unsat;
  if (reply == "unknown") return SatResult::Unknown;
  poison("unexpected check-sat reply '" + reply + "'");
}

std::map<std::string, Value> SolverSession::get_values(std::span<const Variable> vars) {
  std::map<std::string, Value> out;
  if (vars.empty()) return out;
  std::string cmd = "(get-value (";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) cmd += ' ';
    cmd += print_term(Term::var(vars[i].name));
  }
  cmd += "))";
  auto reply = exchange(cmd);
  try {
    auto parsed = read_sexprs(reply);
    if (parsed.size() != 1 || parsed[0].is_atom || parsed[0].items.size() != vars.size())
      throw SolverError("malformed get-value reply");
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const auto& pair = parsed[0].items[i];
      if (pair.is_atom || pair.items.size() != 2) throw SolverError("malformed get-value entry");
      out.emplace(vars[i].name, parse_value(pair.items[1], vars[i].sort));
    }
  } catch (const Error& e) {
    poison(std::string("cannot parse model: ") + e.what());
  }
  return out;
}

Value SolverSession::random_value(Sort s) {
  if (s == Sort::Bool) return std::uniform_int_distribution<int>(0, 1)(rng_) == 1;
  return Integer(std::uniform_int_distribution<long long>(kRandomLow, kRandomHigh)(rng_));
}

std::optional<State> SolverSession::get_model(const Term& constraint, std::span<const Variable> vars) {
  ensure_live();
  const auto fv = free_vars(constraint);
  std::vector<Variable> constrained;
  std::map<std::string, Value> values;
  {
    ScopeGuard scope(*this);
    for (const auto& v : vars) declare(v);
    for (const auto& name : fv)
      if (!is_declared(name)) throw std::logic_error("undeclared variable '" + name + "' in solver query");
    assert_term(constraint);
    switch (check_sat()) {
      case SatResult::Unsat:
        return std::nullopt;
      case SatResult::Unknown:
        throw SolverUnknown("solver returned unknown");
      case SatResult::Sat:
        break;
    }
    for (const auto& v : vars)
      if (fv.count(v.name)) constrained.push_back(v);
    // Free variables declared outside `vars` are fetched only for validation.
    std::vector<Variable> fetch = constrained;
    for (const auto& name : fv) {
      bool listed = std::any_of(vars.begin(), vars.end(), [&](const Variable& v) { return v.name == name; });
      if (!listed) fetch.push_back({name, declared_.at(name)});
    }
    values = get_values(fetch);
  }

  State model;
  for (const auto& v : vars) {
    if (fv.count(v.name))
      model.set(v.name, values.at(v.name));
    else
      model.set(v.name, random_value(v.sort));
  }

  State full = model;
  for (const auto& [name, value] : values) full.bindings.emplace(name, value);
  bool holds = false;
  try {
    holds = eval_bool(constraint, full);
  } catch (const EvalError& e) {
    throw SolverUnknown(std::string("model cannot be validated: ") + e.what());
  }
  if (!holds) throw SolverUnknown("solver model does not satisfy the query");
  return model;
}

CheckResult SolverSession::check_valid(const Term& formula, std::span<const Variable> vars) {
  try {
    auto model = get_model(Term::negate(formula), vars);
    if (!model) return CheckResult::make_valid();
    return CheckResult::make_counterexample(std::move(*model));
  } catch (const SolverUnknown& e) {
    return CheckResult::make_unknown(e.what());
  } catch (const SolverError& e) {
    return CheckResult::make_unknown(e.what());
  }
}

}  // namespace invgen
