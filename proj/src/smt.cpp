#include "gvc0/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <sstream>

namespace gvc0 {

// ---------------------------------------------------------------------------
// term encoding
// ---------------------------------------------------------------------------

std::string encodeSort(Sort s) { return sortName(s); }

std::string encodeTerm(const Term& t) {
  switch (t.kind) {
    case TermKind::IntLit:
      if (t.intVal < 0) return "(- " + std::to_string(-t.intVal) + ")";
      return std::to_string(t.intVal);
    case TermKind::BoolLit:
      return t.boolVal ? "true" : "false";
    case TermKind::NullRef:
      return "null";
    case TermKind::Symbol:
      return t.name;
    case TermKind::App: {
      if (t.args.empty()) return t.name;  // unit
      std::ostringstream os;
      os << "(" << t.name;
      for (const auto& a : t.args) os << " " << encodeTerm(*a);
      os << ")";
      return os.str();
    }
    case TermKind::FuncApp: {
      std::ostringstream os;
      os << "(" << t.name;
      if (t.limited) os << "%limited";
      for (const auto& a : t.args) os << " " << encodeTerm(*a);
      os << ")";
      return os.str();
    }
  }
  throw InternalError("encodeTerm: bad kind");
}

std::string defaultSolverCommand() {
  if (const char* env = std::getenv("GVC0_SOLVER"); env && *env) return env;
  return "z3 -in";
}

// ---------------------------------------------------------------------------
// subprocess plumbing
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> splitCommand(const std::string& cmd) {
  std::vector<std::string> out;
  std::istringstream is(cmd);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

class SmtProcess {
public:
  explicit SmtProcess(const std::string& command) {
    std::vector<std::string> argv = splitCommand(command);
    if (argv.empty()) throw SolverError("empty solver command");

    int toChild[2], fromChild[2];
    if (pipe(toChild) != 0 || pipe(fromChild) != 0)
      throw SolverError("pipe() failed for solver '" + command + "'");

    pid_ = fork();
    if (pid_ < 0) throw SolverError("fork() failed for solver '" + command + "'");
    if (pid_ == 0) {
      dup2(toChild[0], STDIN_FILENO);
      dup2(fromChild[1], STDOUT_FILENO);
      close(toChild[0]);
      close(toChild[1]);
      close(fromChild[0]);
      close(fromChild[1]);
      std::vector<char*> cargv;
      for (auto& a : argv) cargv.push_back(a.data());
      cargv.push_back(nullptr);
      execvp(cargv[0], cargv.data());
      _exit(127);
    }
    close(toChild[0]);
    close(fromChild[1]);
    in_ = toChild[1];
    out_ = fromChild[0];
  }

  ~SmtProcess() { shutdown(); }

  void writeLine(const std::string& s) {
    if (in_ < 0) throw SolverError("solver pipe closed");
    std::string line = s + "\n";
    const char* p = line.data();
    std::size_t left = line.size();
    while (left > 0) {
      ssize_t n = ::write(in_, p, left);
      if (n <= 0) {
        markDead();
        throw SolverError("write to solver failed");
      }
      p += n;
      left -= static_cast<std::size_t>(n);
    }
  }

  /// One line from the solver, or nullopt on deadline/EOF (process is then
  /// considered lost).
  std::optional<std::string> readLine(int deadlineMs) {
    for (;;) {
      auto nl = buf_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buf_.substr(0, nl);
        buf_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      pollfd pfd{out_, POLLIN, 0};
      int r = ::poll(&pfd, 1, deadlineMs);
      if (r <= 0) {
        markDead();
        return std::nullopt;  // timeout
      }
      char chunk[4096];
      ssize_t n = ::read(out_, chunk, sizeof chunk);
      if (n <= 0) {
        markDead();
        return std::nullopt;  // EOF / crash
      }
      buf_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  bool alive() const { return pid_ > 0; }

private:
  void markDead() {
    if (pid_ > 0) {
      kill(pid_, SIGKILL);
      waitpid(pid_, nullptr, 0);
      pid_ = -1;
    }
    if (in_ >= 0) close(in_);
    if (out_ >= 0) close(out_);
    in_ = out_ = -1;
  }

  void shutdown() {
    if (pid_ > 0 && in_ >= 0) {
      // polite exit; EOF on stdin ends well-behaved solvers too
      std::string bye = "(exit)\n";
      [[maybe_unused]] ssize_t ignored = ::write(in_, bye.data(), bye.size());
      close(in_);
      in_ = -1;
      for (int i = 0; i < 50 && pid_ > 0; ++i) {
        int status;
        if (waitpid(pid_, &status, WNOHANG) == pid_) {
          pid_ = -1;
          break;
        }
        usleep(20000);
      }
    }
    markDead();
  }

  pid_t pid_ = -1;
  int in_ = -1;
  int out_ = -1;
  std::string buf_;
};

// ---------------------------------------------------------------------------
// session
// ---------------------------------------------------------------------------

const std::vector<std::string>& SolverSession::specPreamble() {
  static const std::vector<std::string> pre = {
      "(set-logic ALL)",
      "(declare-sort Ref 0)",
      "(declare-const null Ref)",
      "(declare-datatypes ((Snap 0)) (((unit) (combine (first Snap) (second Snap)) (snapInt "
      "(getInt Int)) (snapBool (getBool Bool)) (snapRef (getRef Ref)))))",
  };
  return pre;
}

SolverSession::SolverSession(const std::string& command, int timeoutSeconds)
    : commandLine_(command), timeoutSec_(timeoutSeconds) {
  proc_ = std::make_unique<SmtProcess>(command);
  // generous first deadline: the solver may still be starting up
  std::string r = roundTrip("(set-option :print-success true)", 120000);
  if (r != "success")
    throw SolverError("solver '" + command + "' did not accept the protocol handshake" +
                      (r.empty() ? " (no response; is the binary present?)" : ": " + r));
  roundTrip("(set-option :timeout " + std::to_string(timeoutSec_ * 1000) + ")", 30000);
  for (const auto& line : specPreamble()) {
    std::string resp = roundTrip(line, 30000);
    if (resp != "success")
      throw SolverError("solver rejected preamble line '" + line + "': " + resp);
  }
  // C-style truncating division on mathematical integers
  roundTrip(
      "(define-fun cdiv ((a Int) (b Int)) Int (ite (>= b 0) (ite (>= a 0) (div a b) (- (div (- "
      "a) b))) (ite (>= a 0) (- (div a (- b))) (div (- a) (- b)))))",
      30000);
  roundTrip("(define-fun cmod ((a Int) (b Int)) Int (- a (* b (cdiv a b))))", 30000);
}

SolverSession::~SolverSession() = default;

bool SolverSession::alive() const { return proc_ && proc_->alive(); }

std::string SolverSession::roundTrip(const std::string& text, int deadlineMs) {
  transcript_.push_back(text);
  proc_->writeLine(text);
  auto line = proc_->readLine(deadlineMs);
  if (!line) {
    transcript_.push_back("; <no response>");
    throw SolverError("solver '" + commandLine_ + "' gave no response to: " + text);
  }
  transcript_.push_back("; " + *line);
  return *line;
}

std::string SolverSession::command(const std::string& text) { return roundTrip(text, 30000); }

void SolverSession::ensureDeclared(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Symbol:
      if (declaredSyms_.insert(t->name).second) {
        std::string resp =
            roundTrip("(declare-const " + t->name + " " + encodeSort(t->sort) + ")", 30000);
        if (resp != "success")
          throw SolverError("declaration of " + t->name + " failed: " + resp);
      }
      break;
    case TermKind::FuncApp:
      if (!declaredFuncs_.count(t->name))
        throw InternalError("function symbol used before declaration: " + t->name);
      for (const auto& a : t->args) ensureDeclared(a);
      break;
    case TermKind::App:
      for (const auto& a : t->args) ensureDeclared(a);
      break;
    default:
      break;
  }
}

Validity SolverSession::checkValid(const std::vector<TermPtr>& pi, const TermPtr& phi) {
  if (!alive()) {
    lastDiagnostic_ = "solver session lost";
    return Validity::Unknown;
  }
  if (phi->sort != Sort::Bool) throw InternalError("checkValid: phi is not boolean");
  int before = depth_;
  try {
    for (const auto& t : pi) ensureDeclared(t);
    ensureDeclared(phi);
    roundTrip("(push 1)", 30000);
    depth_++;
    for (const auto& t : pi) roundTrip("(assert " + encodeTerm(*t) + ")", 30000);
    roundTrip("(assert (not " + encodeTerm(*phi) + "))", 30000);
    std::string verdict = roundTrip("(check-sat)", timeoutSec_ * 1000 + 15000);
    roundTrip("(pop 1)", 30000);
    depth_--;
    if (verdict == "unsat") return Validity::Valid;
    if (verdict == "sat") return Validity::Invalid;
    lastDiagnostic_ = "solver returned: " + verdict;
    return Validity::Unknown;
  } catch (const SolverError& e) {
    depth_ = before;
    lastDiagnostic_ = e.what();
    return Validity::Unknown;
  }
}

Validity SolverSession::checkValidNegated(const std::vector<TermPtr>& pi) {
  return checkValid(pi, tBool(false));
}

void SolverSession::declareFunctionSymbols(const FunctionSymbols& f) {
  if (!declaredFuncs_.insert(f.name).second)
    throw InternalError("function symbols for '" + f.name + "' declared twice");
  std::ostringstream sig;
  sig << "(Snap";
  for (Sort s : f.paramSorts) sig << " " << encodeSort(s);
  sig << ") " << encodeSort(f.retSort);
  for (const std::string& n : {f.name, f.name + "%limited"}) {
    std::string resp = roundTrip("(declare-fun " + n + " " + sig.str() + ")", 30000);
    if (resp != "success") throw SolverError("declare-fun " + n + " failed: " + resp);
  }
  for (const auto& ax : f.axioms) {
    std::string resp = roundTrip(ax.smtText, 30000);
    if (resp != "success")
      throw SolverError("axiom " + ax.name + " rejected: " + resp);
  }
}

}  // namespace gvc0
