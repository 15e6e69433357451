use std::fs;
use std::path::{Path, PathBuf};

use crate::table::{Cell, Table};
use crate::CliError;

/// Matplotlib script that reads `table`'s CSV from its own directory and
/// plots every numeric column against the first one.
pub fn script(table: &Table) -> String {
    let numeric: Vec<&str> = table
        .header
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(i, _)| table.rows.iter().all(|r| matches!(r[*i], Cell::Float(_) | Cell::Int(_) | Cell::Empty)))
        .map(|(_, h)| h.as_str())
        .collect();
    let x = table.header.first().map(String::as_str).unwrap_or("");
    let ys = numeric.iter().map(|y| format!("{y:?}")).collect::<Vec<_>>().join(", ");
    format!(
        "import csv\nimport os\n\nimport matplotlib.pyplot as plt\n\n\
here = os.path.dirname(os.path.abspath(__file__))\n\
with open(os.path.join(here, {file:?}), newline=\"\") as f:\n    rows = list(csv.DictReader(f))\n\n\
x = [float(r[{x:?}]) for r in rows]\n\
fig, ax = plt.subplots()\n\
for name in [{ys}]:\n    ax.plot(x, [float(r[name]) if r[name] else float(\"nan\") for r in rows], label=name)\n\
ax.set_xlabel({x:?})\nax.legend()\n\
fig.savefig(os.path.join(here, {png:?}))\n",
        file = table.file_name(),
        png = format!("{}.png", table.name),
    )
}

pub fn write_script(table: &Table, dir: &Path) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{}.plot.py", table.name));
    fs::write(&path, script(table)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    log::info!("wrote {}", path.display());
    Ok(path)
}
