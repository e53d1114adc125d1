#include "pqe/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

namespace pqe {

namespace {

void set_nonblocking(int fd) { fcntl(fd, F_SETFL, fcntl(fd, F_GETFL, 0) | O_NONBLOCK); }

struct Pipe {
  int read_end = -1;
  int write_end = -1;
  bool open_or(bool ok) {
    int fds[2];
    if (::pipe(fds) != 0) return ok && false;
    read_end = fds[0];
    write_end = fds[1];
    return ok;
  }
  void close_read() {
    if (read_end >= 0) ::close(read_end);
    read_end = -1;
  }
  void close_write() {
    if (write_end >= 0) ::close(write_end);
    write_end = -1;
  }
  ~Pipe() {
    close_read();
    close_write();
  }
};

}  // namespace

RawRun run_process(const std::vector<std::string>& argv, const std::string& input,
                   double timeout_seconds) {
  // writes to a dead solver must not kill us
  static const bool sigpipe_ignored = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;

  RawRun result;
  if (argv.empty()) {
    result.spawn_failed = true;
    return result;
  }

  Pipe child_in, child_out, child_err, exec_fail;
  bool ok = true;
  ok = child_in.open_or(ok);
  ok = child_out.open_or(ok);
  ok = child_err.open_or(ok);
  ok = exec_fail.open_or(ok);
  if (!ok) {
    result.spawn_failed = true;
    return result;
  }
  fcntl(exec_fail.write_end, F_SETFD, FD_CLOEXEC);

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) {
    result.spawn_failed = true;
    return result;
  }

  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(child_in.read_end, STDIN_FILENO);
    ::dup2(child_out.write_end, STDOUT_FILENO);
    ::dup2(child_err.write_end, STDERR_FILENO);
    child_in.close_write();
    child_out.close_read();
    child_err.close_read();
    exec_fail.close_read();

    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    ::execvp(cargv[0], cargv.data());
    const int err = errno;
    ssize_t ignored = ::write(exec_fail.write_end, &err, sizeof(err));
    (void)ignored;
    ::_exit(127);
  }

  ::setpgid(pid, pid);
  child_in.close_read();
  child_out.close_write();
  child_err.close_write();
  exec_fail.close_write();
  set_nonblocking(child_in.write_end);
  set_nonblocking(child_out.read_end);
  set_nonblocking(child_err.read_end);

  std::size_t written = 0;
  bool stdin_open = true;
  bool killed = false;
  const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(timeout_seconds));

  auto drain = [](int fd, std::string& sink) {
    char buf[4096];
    for (;;) {
      const ssize_t n = ::read(fd, buf, sizeof(buf));
      if (n > 0)
        sink.append(buf, static_cast<std::size_t>(n));
      else if (n == 0)
        return true;  // eof
      else
        return errno != EAGAIN && errno != EWOULDBLOCK;  // true only on hard error
    }
  };

  bool out_eof = false, err_eof = false;
  while (!out_eof || !err_eof || stdin_open) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      ::kill(-pid, SIGKILL);
      result.timed_out = true;
      killed = true;
      break;
    }
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();

    struct pollfd fds[3];
    nfds_t nfds = 0;
    int out_slot = -1, err_slot = -1, in_slot = -1;
    if (!out_eof) {
      out_slot = nfds;
      fds[nfds++] = {child_out.read_end, POLLIN, 0};
    }
    if (!err_eof) {
      err_slot = nfds;
      fds[nfds++] = {child_err.read_end, POLLIN, 0};
    }
    if (stdin_open) {
      in_slot = nfds;
      fds[nfds++] = {child_in.write_end, POLLOUT, 0};
    }
    const int rc = ::poll(fds, nfds, static_cast<int>(std::min<long long>(remaining + 1, 1000)));
    if (rc < 0 && errno != EINTR) break;

    if (out_slot >= 0 && (fds[out_slot].revents & (POLLIN | POLLHUP | POLLERR)))
      out_eof = drain(child_out.read_end, result.out);
    if (err_slot >= 0 && (fds[err_slot].revents & (POLLIN | POLLHUP | POLLERR)))
      err_eof = drain(child_err.read_end, result.err);
    if (in_slot >= 0 && (fds[in_slot].revents & (POLLOUT | POLLHUP | POLLERR))) {
      if (fds[in_slot].revents & (POLLHUP | POLLERR)) {
        child_in.close_write();
        stdin_open = false;
      } else {
        const ssize_t n = ::write(child_in.write_end, input.data() + written,
                                  std::min<std::size_t>(input.size() - written, 65536));
        if (n > 0) written += static_cast<std::size_t>(n);
        if (n < 0 && errno != EAGAIN && errno != EWOULDBLOCK) {
          child_in.close_write();
          stdin_open = false;
        }
        if (written >= input.size()) {
          child_in.close_write();
          stdin_open = false;
        }
      }
    }
  }

  if (killed) {
    // collect whatever made it out before the kill
    drain(child_out.read_end, result.out);
    drain(child_err.read_end, result.err);
  }

  int status = 0;
  ::waitpid(pid, &status, 0);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);

  int exec_errno = 0;
  if (::read(exec_fail.read_end, &exec_errno, sizeof(exec_errno)) == sizeof(exec_errno))
    result.spawn_failed = true;

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace pqe
