import csv
from typing import Iterable, List, TextIO

from qbd_solver.cyclic_reduction import QuadraticSolveReport, RIGHT
from qbd_solver.jackson import traffic_intensities
from qbd_solver.models import JacksonParams

REPORT_HEADER = ['case', 'cpu_time', 'res_inf', 'res_cqt', 'band', 'rows', 'columns', 'rank', 'iterations']
PRESET_HEADER = ['name', 'lambda1', 'lambda2', 'mu1', 'mu2', 'p', 'q', 'rho1', 'rho2']


def case_label(case: str, report: QuadraticSolveReport) -> str:
    return f"{case}:R" if report.side == RIGHT else case


def report_row(case: str, report: QuadraticSolveReport) -> List[str]:
    return [
        case_label(case, report),
        f"{report.cpu_time:.4f}",
        f"{report.residual_inf:.3e}",
        f"{report.residual_cqt:.3e}",
        str(report.band),
        str(report.corr_rows),
        str(report.corr_cols),
        str(report.corr_rank),
        str(report.iterations),
    ]


def write_report(rows: Iterable[List[str]], stream: TextIO):
    writer = csv.writer(stream, delimiter='\t', lineterminator='\n')
    writer.writerow(REPORT_HEADER)
    writer.writerows(rows)


def preset_row(name: str, params: JacksonParams) -> List[str]:
    rho1, rho2 = traffic_intensities(params)
    values = [params.lambda1, params.lambda2, params.mu1, params.mu2, params.p, params.q]
    return [name] + [f"{value:g}" for value in values] + [f"{rho1:.4f}", f"{rho2:.4f}"]


def write_presets(presets: dict, scalar: tuple, stream: TextIO, scalar_name: str = 'scalar'):
    writer = csv.writer(stream, delimiter='\t', lineterminator='\n')
    writer.writerow(PRESET_HEADER)
    for name, params in presets.items():
        writer.writerow(preset_row(name, params))
    writer.writerow([f"# {scalar_name}: a-1, a0, a1 = " + ", ".join(f"{value:g}" for value in scalar)])
