#include "claimdecomp/protocol/subprocess.hpp"

#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include "claimdecomp/error.hpp"

extern char** environ;

namespace claimdecomp {

namespace {

// Writes to a dead child must surface as EPIPE, not kill us.
void ignore_sigpipe() {
    static std::once_flag once;
    std::call_once(once, [] {
        struct sigaction sa {};
        sa.sa_handler = SIG_IGN;
        sigemptyset(&sa.sa_mask);
        sigaction(SIGPIPE, &sa, nullptr);
    });
}

void close_fd(int& fd) noexcept {
    if (fd >= 0) ::close(fd);
    fd = -1;
}

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

}  // namespace

Subprocess::Subprocess(const std::string& command) : m_command(command) {
    ignore_sigpipe();
    int in_pipe[2];
    int out_pipe[2];
    if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw ProtocolError(errno_text("pipe"));
    if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
        ::close(in_pipe[0]);
        ::close(in_pipe[1]);
        throw ProtocolError(errno_text("pipe"));
    }

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);

    // A group of its own, so that shutdown also reaches whatever the shell
    // started.
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);

    const char* argv[] = {"/bin/sh", "-c", m_command.c_str(), nullptr};
    const int rc = posix_spawn(&m_pid, "/bin/sh", &actions, &attr, const_cast<char**>(argv),
                               environ);
    posix_spawnattr_destroy(&attr);
    posix_spawn_file_actions_destroy(&actions);
    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    if (rc != 0) {
        ::close(in_pipe[1]);
        ::close(out_pipe[0]);
        throw ProtocolError("cannot start '" + m_command + "': " + std::strerror(rc));
    }
    m_to_child = in_pipe[1];
    m_from_child = out_pipe[0];
}

Subprocess::~Subprocess() { shutdown(); }

Subprocess::Subprocess(Subprocess&& other) noexcept
    : m_command(std::move(other.m_command)),
      m_pid(std::exchange(other.m_pid, -1)),
      m_to_child(std::exchange(other.m_to_child, -1)),
      m_from_child(std::exchange(other.m_from_child, -1)),
      m_buffer(std::move(other.m_buffer)),
      m_eof(other.m_eof) {}

Subprocess& Subprocess::operator=(Subprocess&& other) noexcept {
    if (this != &other) {
        shutdown();
        m_command = std::move(other.m_command);
        m_pid = std::exchange(other.m_pid, -1);
        m_to_child = std::exchange(other.m_to_child, -1);
        m_from_child = std::exchange(other.m_from_child, -1);
        m_buffer = std::move(other.m_buffer);
        m_eof = other.m_eof;
    }
    return *this;
}

void Subprocess::shutdown() noexcept {
    close_fd(m_to_child);
    close_fd(m_from_child);
    if (m_pid <= 0) return;
    int status = 0;
    for (int i = 0; i < 50; ++i) {
        if (::waitpid(m_pid, &status, WNOHANG) != 0) {
            ::kill(-m_pid, SIGKILL);
            m_pid = -1;
            return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(-m_pid, SIGKILL);
    ::waitpid(m_pid, &status, 0);
    m_pid = -1;
}

void Subprocess::write_line(std::string_view line) {
    if (m_to_child < 0) throw ProtocolError("'" + m_command + "': input already closed");
    std::string data(line);
    data.push_back('\n');
    std::size_t off = 0;
    while (off < data.size()) {
        const ssize_t n = ::write(m_to_child, data.data() + off, data.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            if (errno == EPIPE)
                throw ProtocolError("'" + m_command + "' closed its input (process exited?)");
            throw ProtocolError(errno_text("write to adapter"));
        }
        off += static_cast<std::size_t>(n);
    }
}

std::optional<std::string> Subprocess::read_line(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (true) {
        if (auto nl = m_buffer.find('\n'); nl != std::string::npos) {
            std::string line = m_buffer.substr(0, nl);
            m_buffer.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return line;
        }
        if (m_eof || m_from_child < 0) {
            if (m_buffer.empty()) return std::nullopt;
            std::string line = std::move(m_buffer);
            m_buffer.clear();
            return line;
        }
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0)
            throw TimeoutError("'" + m_command + "' did not answer within " +
                               std::to_string(timeout.count()) + " ms");
        pollfd pfd{m_from_child, POLLIN, 0};
        const int rc = ::poll(&pfd, 1, static_cast<int>(left.count()));
        if (rc < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(errno_text("poll"));
        }
        if (rc == 0) continue;
        char chunk[4096];
        const ssize_t n = ::read(m_from_child, chunk, sizeof chunk);
        if (n < 0) {
            if (errno == EINTR || errno == EAGAIN) continue;
            throw ProtocolError(errno_text("read from adapter"));
        }
        if (n == 0)
            m_eof = true;
        else
            m_buffer.append(chunk, static_cast<std::size_t>(n));
    }
}

}  // namespace claimdecomp
