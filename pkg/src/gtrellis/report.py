"""Text and key=value rendering for CLI reports."""

from __future__ import annotations

from dataclasses import dataclass, field

from .checks import CheckResult
from .groups import eta, is_normal
from .schreier import controllable_form, schreier_matrix
from .trellis import TrellisSection


@dataclass
class Report:
    title: str
    summary: dict = field(default_factory=dict)  # ordered key -> value
    blocks: list = field(default_factory=list)  # (heading, lines)
    checks: list[CheckResult] = field(default_factory=list)
    extra: dict = field(default_factory=dict)  # machine output only

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self, machine: bool = False) -> str:
        return self._machine() if machine else self._text()

    def _text(self) -> str:
        out = [self.title]
        out += [f"  {k}: {_fmt(v)}" for k, v in self.summary.items()]
        for heading, lines in self.blocks:
            out.append("")
            out.append(heading)
            out += [f"  {ln}" for ln in lines]
        if self.checks:
            out.append("")
            for c in self.checks:
                mark = "PASS" if c.passed else "FAIL"
                extra = f"  ({c.detail})" if c.detail else ""
                wit = f"  witness={c.witness!r}" if not c.passed and c.witness is not None else ""
                out.append(f"{mark} {c.name}{extra}{wit}")
            n_bad = sum(not c.passed for c in self.checks)
            out.append(f"{len(self.checks) - n_bad}/{len(self.checks)} checks passed")
        return "\n".join(out) + "\n"

    def _machine(self) -> str:
        out = [f"{k}={_fmt(v, sep=',')}" for k, v in {**self.summary, **self.extra}.items()]
        for c in self.checks:
            out.append(f"check.{c.name}={'pass' if c.passed else 'fail'}")
            if not c.passed and c.witness is not None:
                out.append(f"witness.{c.name}={c.witness!r}".replace(" ", ""))
        if self.checks:
            out.append(f"ok={'true' if self.ok else 'false'}")
        return "\n".join(out) + "\n"


def _fmt(v, sep=" "):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return sep.join(str(x) for x in v)
    return str(v)


def _grid(rows: list[tuple[str, list[str]]], header: list[str]) -> list[str]:
    width = max([len(h) for h in header] + [len(c) for _, cells in rows for c in cells] + [1])
    lw = max([len(r) for r, _ in rows] + [3])
    lines = [" " * lw + " " + " ".join(h.rjust(width) for h in header)]
    for label, cells in rows:
        lines.append(label.rjust(lw) + " " + " ".join(c.rjust(width) for c in cells))
    return lines


def section_summary(section: TrellisSection) -> dict:
    ch = section.chains
    return {
        "section": section.name or "(unnamed)",
        "order_B": section.B.order,
        "order_S": section.S.order,
        "ell": ch.ell,
        "X_orders": [ch.X(j).order for j in range(-1, ch.ell + 1)],
        "Y_orders": [ch.Y(k).order for k in range(-1, ch.ell + 1)],
        "eta_B": eta(section.B),
        "abelian": section.B.is_abelian,
    }


def analysis_report(section: TrellisSection) -> Report:
    rep = Report(f"analysis of {section.name or 'section'}", section_summary(section))
    ell = section.chains.ell
    M = schreier_matrix(section)
    rep.summary["controllable"] = M.controllable
    B = section.B.whole

    def cell(H):
        return f"{H.order}" + ("" if is_normal(B, H) else "*")

    rows = [(f"k={k}", [cell(M.entry(j, k)) for j in range(ell + 1)]) for k in range(ell, -2, -1)]
    rep.blocks.append(("Schreier matrix, entry (j,k) = X_{j-1}(X_j ∩ Y_k), orders", _grid(rows, [f"j={j}" for j in range(ell + 1)])))
    for j in range(ell + 1):
        for k in range(-1, ell + 1):
            rep.extra[f"sm.{j}.{k}"] = M.entry(j, k).order
    if M.controllable:
        cf = controllable_form(M)
        rows = []
        for r in range(ell, -2, -1):
            rows.append((f"j+k={r}", [cell(cf[(j, r)]) if (j, r) in cf else "." for j in range(ell + 1)]))
        rep.blocks.append(("controllable form, column j, row j+k", _grid(rows, [f"j={j}" for j in range(ell + 1)])))
        for (j, r), H in sorted(cf.items()):
            rep.extra[f"csm.{j}.{r}"] = H.order
    rep.blocks.append(("legend", ["numbers are subgroup orders; * marks an entry that is not normal in B"]))
    return rep
