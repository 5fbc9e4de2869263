import pytest


@pytest.fixture
def write_dataset(tmp_path):
    """Write values to a one-number-per-line file and return its path."""

    def _write(values, name="data.txt", header=None):
        path = tmp_path / name
        lines = [] if header is None else [header]
        lines += [repr(float(v)) for v in values]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    return _write
