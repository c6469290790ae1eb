// Thin DOM helpers for the status line, error banner, and gesture readout.

export class Hud {
  private stageEl = document.getElementById('stage')!;
  private bannerEl = document.getElementById('banner')!;
  private readoutEl = document.getElementById('readout')!;
  private selectionEl = document.getElementById('selection')!;

  setStage(stage: string, revision: number): void {
    this.stageEl.textContent = `${stage} · rev ${revision}`;
  }

  setSelection(selection: string | null): void {
    this.selectionEl.textContent = selection === null ? 'nothing selected' : `▸ ${selection}`;
  }

  setReadout(label: string, value: number | null): void {
    this.readoutEl.textContent = value === null ? '' : `${label}: ${value.toFixed(3)}`;
  }

  banner(text: string | null): void {
    this.bannerEl.textContent = text ?? '';
    this.bannerEl.style.display = text === null ? 'none' : 'block';
  }
}
