import csv
import datetime
import io
import json
import sys
from pathlib import Path

SCHEMAS = {
    'evolve': ('x', 'prob', 're_a', 'im_a', 're_b', 'im_b'),
    'entropy-table': ('t', 'entropy'),
    'sweep': ('theta', 'phi', 'entropy'),
    'trace-distance': ('t', 'D'),
    'variance': ('t', 'variance', 'walk_type'),
    'tomography': ('t', 'entropy_mean', 'entropy_std', 'fidelity_mean'),
    'distribution': (
        't',
        'similarity_mean',
        'similarity_std',
        'variance_mean',
        'variance_std',
        'variance_theory',
    ),
}


def header_line(command, now=None):
    now = now or datetime.datetime.now(datetime.timezone.utc)
    return f'# qwalk {command} generated={now.isoformat(timespec="seconds")}\n'


def render_csv(command, rows, header=True):
    buf = io.StringIO()
    if header:
        buf.write(header_line(command))
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(SCHEMAS[command])
    writer.writerows(rows)
    return buf.getvalue()


def render_json(command, rows):
    payload = {
        'command': command,
        'columns': list(SCHEMAS[command]),
        'rows': [list(r) for r in rows],
    }
    return json.dumps(payload, indent=2, allow_nan=True) + '\n'


def write_table(command, rows, output='-', fmt='csv', header=True):
    rows = list(rows)
    if fmt == 'csv':
        text = render_csv(command, rows, header=header)
    else:
        text = render_json(command, rows)
    if output in (None, '-'):
        sys.stdout.write(text)
        return None
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')
    return path


def sidecar_path(output, suffix):
    if output in (None, '-'):
        return Path(f'qwalk{suffix}')
    return Path(output).with_suffix(suffix)


def write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + '\n', encoding='utf-8')
    return path
