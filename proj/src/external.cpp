#include "syncword/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <vector>

#include "syncword/errors.hpp"

namespace syncword {

namespace {

class TempFile {
public:
  explicit TempFile(std::string_view contents) {
    const char* dir = std::getenv("TMPDIR");
    std::string tmpl = std::string(dir && *dir ? dir : "/tmp") + "/syncword-XXXXXX";
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    const int fd = ::mkstemp(buf.data());
    if (fd < 0) throw InfrastructureError(std::string("mkstemp: ") + std::strerror(errno));
    path_ = buf.data();
    std::size_t done = 0;
    while (done < contents.size()) {
      const auto w = ::write(fd, contents.data() + done, contents.size() - done);
      if (w < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        throw InfrastructureError(std::string("write: ") + std::strerror(errno));
      }
      done += static_cast<std::size_t>(w);
    }
    ::close(fd);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

std::string substitute(std::string_view tmpl, std::string_view key, const std::string& value) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto hit = tmpl.find(key, pos);
    if (hit == std::string_view::npos) break;
    out.append(tmpl.substr(pos, hit - pos));
    out.append(value);
    pos = hit + key.size();
  }
  out.append(tmpl.substr(pos));
  return out;
}

std::string tail(const std::string& s, std::size_t max = 400) {
  return s.size() <= max ? s : "..." + s.substr(s.size() - max);
}

}  // namespace

ExternalResult run_external(std::string_view payload, std::string_view command_template,
                            const ExternalOptions& options) {
  if (command_template.find("{file}") == std::string_view::npos)
    throw InfrastructureError("solver command template lacks a {file} placeholder");
  TempFile input(payload);
  std::optional<TempFile> model_file;
  std::string command = substitute(command_template, "{file}", input.path());
  if (command.find("{out}") != std::string::npos) {
    model_file.emplace("");
    command = substitute(command, "{out}", model_file->path());
  }

  int out_pipe[2], err_pipe[2];
  if (::pipe(out_pipe) != 0 || ::pipe(err_pipe) != 0)
    throw InfrastructureError(std::string("pipe: ") + std::strerror(errno));

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) throw InfrastructureError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::dup2(err_pipe[1], STDERR_FILENO);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[0]);
    ::close(err_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);

  ExternalResult result;
  pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  std::string* sinks[2] = {&result.output, &result.diagnostics};
  int open_fds = 2;
  bool timed_out = false;
  char buf[65536];
  while (open_fds > 0) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(options.time_budget - elapsed);
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    const int ready = ::poll(fds, 2, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      const auto got = ::read(fds[i].fd, buf, sizeof buf);
      if (got > 0) {
        sinks[i]->append(buf, static_cast<std::size_t>(got));
      } else if (got == 0 || errno != EINTR) {
        ::close(fds[i].fd);
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  if (timed_out) ::kill(-pid, SIGKILL);
  for (auto& f : fds)
    if (f.fd >= 0) ::close(f.fd);

  int status = 0;
  rusage usage{};
  pid_t waited;
  do waited = ::wait4(pid, &status, 0, &usage);
  while (waited < 0 && errno == EINTR);
  if (!timed_out) ::kill(-pid, SIGKILL);  // stray grandchildren
  result.wall = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  if (usage.ru_maxrss > 0) result.peak_rss_kb = usage.ru_maxrss;

  if (timed_out)
    throw TimeoutError("solver exceeded the " + std::to_string(options.time_budget.count()) +
                       " ms budget: " + command);
  if (WIFSIGNALED(status))
    throw InfrastructureError("solver killed by signal " + std::to_string(WTERMSIG(status)) + ": " + command +
                              "\n" + tail(result.diagnostics));
  result.exit_status = WEXITSTATUS(status);
  if (std::find(options.accepted_exits.begin(), options.accepted_exits.end(), result.exit_status) ==
      options.accepted_exits.end())
    throw InfrastructureError("solver exited with status " + std::to_string(result.exit_status) + ": " +
                              command + "\n" + tail(result.diagnostics));
  if (model_file) {
    std::ifstream in(model_file->path());
    result.output.append(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  if (result.output.find_first_not_of(" \t\r\n") == std::string::npos)
    throw InfrastructureError("solver produced no output: " + command + "\n" + tail(result.diagnostics));
  return result;
}

}  // namespace syncword
