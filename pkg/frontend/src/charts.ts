// Bar charts drawn straight from the count maps the API returns.
// No aggregation happens here: one bar per key, bar length relative to
// the maximum count in the map.

export type BarOrder = "key" | "count";

export interface BarChartOptions {
  title: string;
  order?: BarOrder;
}

function sortedEntries(
  counts: Record<string, number>,
  order: BarOrder,
): Array<[string, number]> {
  const entries = Object.entries(counts);
  if (order === "count") {
    return entries.sort((a, b) => b[1] - a[1] || a[0].localeCompare(b[0]));
  }
  return entries.sort((a, b) => a[0].localeCompare(b[0]));
}

export function barChart(
  counts: Record<string, number>,
  options: BarChartOptions,
): HTMLElement {
  const chart = document.createElement("figure");
  chart.className = "bar-chart";

  const caption = document.createElement("figcaption");
  caption.textContent = options.title;
  chart.appendChild(caption);

  const entries = sortedEntries(counts, options.order ?? "key");
  if (entries.length === 0) {
    const empty = document.createElement("p");
    empty.className = "bar-chart__empty";
    empty.textContent = "No data.";
    chart.appendChild(empty);
    return chart;
  }

  const max = Math.max(...entries.map(([, count]) => count), 1);
  for (const [key, count] of entries) {
    const row = document.createElement("div");
    row.className = "bar-row";
    row.dataset.key = key;

    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = key;

    const track = document.createElement("span");
    track.className = "bar-track";
    const fill = document.createElement("span");
    fill.className = "bar-fill";
    fill.style.width = `${(count / max) * 100}%`;
    track.appendChild(fill);

    const value = document.createElement("span");
    value.className = "bar-value";
    value.textContent = String(count);

    row.append(label, track, value);
    chart.appendChild(row);
  }
  return chart;
}
