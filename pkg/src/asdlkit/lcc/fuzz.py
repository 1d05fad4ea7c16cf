"""Random well-typed mini-language programs for differential testing."""

from __future__ import annotations

import random


class ProgramGenerator:
    """Generates programs that exercise every construct of the language:
    char promotion and narrowing, pointer arithmetic, stores through
    post-incremented pointers, repeated reads (common subexpressions) and
    calls to ``print``."""

    def __init__(self, seed: int, max_statements: int = 12, max_depth: int = 4):
        self.rng = random.Random(seed)
        self.max_statements = max_statements
        self.max_depth = max_depth
        self.vars: dict[str, str] = {}  # name -> "int" | "char" | "int*" | "char*"

    def names(self, kind: str) -> list[str]:
        return [n for n, k in self.vars.items() if k == kind]

    def declarations(self) -> list[str]:
        rng = self.rng
        lines = []
        for kind in ("int", "char", "int*", "char*"):
            count = rng.randint(1 if kind in ("int", "char*") else 0, 3)
            names = [f"{kind[0]}{'p' if kind.endswith('*') else 'v'}{i}" for i in range(count)]
            for n in names:
                self.vars[n] = kind
            if names:
                star = "*" if kind.endswith("*") else ""
                lines.append(f"{kind.rstrip('*')} {', '.join(star + n for n in names)};")
        rng.shuffle(lines)
        return lines

    def int_expr(self, depth: int = 0) -> str:
        rng = self.rng
        if depth >= self.max_depth or rng.random() < 0.3:
            choices = ["lit", "int", "char", "deref", "deref"]
            pick = rng.choice(choices)
            if pick == "int" and self.names("int"):
                return rng.choice(self.names("int"))
            if pick == "char" and self.names("char"):
                return rng.choice(self.names("char"))
            if pick == "deref":
                ptrs = self.names("int*") + self.names("char*")
                if ptrs:
                    p = rng.choice(ptrs)
                    return f"*{p}++" if rng.random() < 0.2 else f"*{p}"
            return str(rng.randint(0, 1000))
        op = rng.choice("+-*/")
        left, right = self.int_expr(depth + 1), self.int_expr(depth + 1)
        text = f"{left} {op} {right}"
        return f"({text})" if rng.random() < 0.5 else text

    def pointer_expr(self, kind: str) -> str:
        rng = self.rng
        p = rng.choice(self.names(kind))
        r = rng.random()
        if r < 0.4:
            return p
        if r < 0.6:
            return f"{p}++"
        if r < 0.8:
            return f"{p} + {self.int_expr(self.max_depth - 1)}"
        return f"{p} - {rng.randint(0, 9)}"

    def statement(self) -> str:
        rng = self.rng
        r = rng.random()
        ptrs = self.names("int*") + self.names("char*")
        if r < 0.15:
            if ptrs and rng.random() < 0.3:
                return f"print({self.pointer_expr(self.vars[rng.choice(ptrs)])});"
            return f"print({self.int_expr()});"
        if r < 0.35 and ptrs:
            p = rng.choice(ptrs)
            target = f"*{p}++" if rng.random() < 0.5 else f"*{p}"
            return f"{target} = {self.int_expr()};"
        if r < 0.45 and ptrs:
            p = rng.choice(ptrs)
            return f"{p} = {self.pointer_expr(self.vars[p])};"
        scalars = self.names("int") + self.names("char")
        x = rng.choice(scalars)
        if rng.random() < 0.3:
            # the same variable on both sides, and read twice on the right
            return f"{x} = {x} * {x} + {self.int_expr(2)};"
        return f"{x} = {self.int_expr()};"

    def program(self) -> str:
        lines = self.declarations()
        if self.rng.random() < 0.2:
            lines.append("// a comment line")
        lines += [self.statement() for _ in range(self.rng.randint(1, self.max_statements))]
        return "\n".join(lines) + "\n"


def random_program(seed: int, max_statements: int = 12) -> str:
    return ProgramGenerator(seed, max_statements).program()
