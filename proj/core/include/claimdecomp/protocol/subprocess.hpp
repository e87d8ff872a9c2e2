#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <sys/types.h>

namespace claimdecomp {

/// A child process run through `/bin/sh -c`, with line-oriented access to
/// its standard input and output. Standard error is inherited. Move-only;
/// the destructor closes the child's stdin, waits briefly, then kills it.
class Subprocess {
  public:
    explicit Subprocess(const std::string& command);
    ~Subprocess();

    Subprocess(Subprocess&& other) noexcept;
    Subprocess& operator=(Subprocess&& other) noexcept;
    Subprocess(const Subprocess&) = delete;
    Subprocess& operator=(const Subprocess&) = delete;

    /// Writes `line` plus '\n'. Throws ProtocolError if the child has closed
    /// its input.
    void write_line(std::string_view line);

    /// Next line without its terminator; nullopt once the child closed its
    /// output. Throws TimeoutError if nothing complete arrives in time.
    std::optional<std::string> read_line(std::chrono::milliseconds timeout);

    const std::string& command() const noexcept { return m_command; }
    pid_t pid() const noexcept { return m_pid; }

  private:
    void shutdown() noexcept;

    std::string m_command;
    pid_t m_pid = -1;
    int m_to_child = -1;
    int m_from_child = -1;
    std::string m_buffer;
    bool m_eof = false;
};

}  // namespace claimdecomp
