#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "autostruct/compiler.hpp"
#include "autostruct/presentation.hpp"

namespace autostruct {

/// Reads a `.astruct` manifest. Lines, in order of use:
///
///     builtin: presburger           # start from a builtin, or
///     tm: machine.tm                # a configuration space, or
///     alphabet: 0 1                 # an explicit alphabet and
///     domain: domain.aut            # domain automaton
///     rel Add 3 add.aut             # relation from a .aut file
///     define Lt(x, y) := Le(x,y) & ~x = y
///
/// Paths are relative to `base_dir`. `#` starts a comment except inside a
/// define. Throws FormatError.
Presentation parse_structure(std::string_view text, const std::filesystem::path& base_dir = ".",
                             const CompileOptions& options = {});
Presentation load_structure(const std::filesystem::path& path, const CompileOptions& options = {});

/// Writes `path` and one `.aut` file per relation next to it, named
/// `<stem>.domain.aut` and `<stem>.<relation>.aut`.
void save_structure(const Presentation& p, const std::filesystem::path& path, std::string_view header = {});

}  // namespace autostruct
