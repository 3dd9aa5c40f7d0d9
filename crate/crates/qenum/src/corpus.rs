//! Built-in codes, embedded as code-file text.

use qenum_core::code::StabilizerCode;

use crate::codefile::parse_code;

pub struct BuiltinCode {
    pub name: &'static str,
    pub text: &'static str,
    /// Whether the code is expected to be formally self-dual.
    pub self_dual: bool,
}

pub const BUILTINS: &[BuiltinCode] = &[
    BuiltinCode {
        name: "trivial2",
        text: "# whole space, one qubit\nq 2\nn 1\n",
        self_dual: false,
    },
    BuiltinCode {
        name: "trivial3",
        text: "# whole space, one qutrit\nq 3\nn 1\n",
        self_dual: false,
    },
    BuiltinCode {
        name: "bell2",
        text: "# Bell pair\nq 2\nn 2\ngen 1 1 | 0 0\ngen 0 0 | 1 1\n",
        self_dual: true,
    },
    BuiltinCode {
        name: "bell3",
        text: "# qutrit Bell analog\nq 3\nn 2\ngen 1 1 | 0 0\ngen 0 0 | 1 2\n",
        self_dual: true,
    },
    BuiltinCode {
        name: "rep3",
        text: "# Z-type repetition code\nq 2\nn 3\ngen 0 0 0 | 1 1 0\ngen 0 0 0 | 0 1 1\n",
        self_dual: false,
    },
];

pub fn builtin(name: &str) -> Option<&'static BuiltinCode> {
    BUILTINS.iter().find(|b| b.name == name)
}

impl BuiltinCode {
    pub fn code(&self) -> StabilizerCode {
        parse_code(self.text).expect("built-in code parses")
    }
}
