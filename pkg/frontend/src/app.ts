// Application shell: project setup, the pipeline job bar, and the three
// workbench views. All business logic stays server-side; this file only
// wires DOM events to API calls and re-renders.

import { ApiClient } from './api';
import { clear, el } from './dom';
import { WorkbenchState } from './state';
import { createComparisonDashboard } from './views/comparisonDashboard';
import { createGenerationPanel } from './views/generationPanel';
import { createSpaceExplorer } from './views/spaceExplorer';

export interface App {
  state: WorkbenchState;
  refreshAll(): Promise<void>;
}

export function createApp(root: HTMLElement, api: ApiClient): App {
  const state = new WorkbenchState();

  const projectNameInput = el('input', {
    type: 'text',
    placeholder: 'project name',
    'data-field': 'project-name',
  }) as HTMLInputElement;
  const createButton = el('button', { 'data-action': 'create-project' }, ['Create project']);
  const fileInput = el('input', {
    type: 'file',
    multiple: true,
    'data-field': 'asset-files',
  }) as HTMLInputElement;
  const processButton = el('button', { 'data-action': 'process' }, ['Process assets']);
  const discoverButton = el('button', { 'data-action': 'discover' }, ['Discover spaces']);
  const describeButton = el('button', { 'data-action': 'describe' }, ['Describe spaces']);
  const statusLine = el('p', { class: 'app-status', 'data-field': 'app-status' }, ['No project.']);

  const header = el('header', { class: 'app-header' }, [
    el('h1', {}, ['Opportunity workbench']),
    el('div', { class: 'project-bar' }, [
      projectNameInput,
      createButton,
      fileInput,
      processButton,
      discoverButton,
      describeButton,
    ]),
    statusLine,
  ]);

  const explorer = createSpaceExplorer(api, state, {
    onSelectionChanged: () => panel.refreshForm(),
    onRunDiscovery: () => void runPipelineJob('discover_spaces', 'Discovering spaces'),
  });
  const panel = createGenerationPanel(api, state, {
    onBatchesChanged: () => void dashboard.refresh(),
  });
  const dashboard = createComparisonDashboard(api, state);

  const main = el('main', { class: 'workbench' }, [
    explorer.element,
    panel.element,
    dashboard.element,
  ]);
  clear(root);
  root.append(header, main);

  function setStatus(text: string): void {
    statusLine.textContent = text;
  }

  async function refreshAll(): Promise<void> {
    await explorer.refresh();
    panel.refreshForm();
    await panel.refreshResults();
    await dashboard.refresh();
  }

  async function runPipelineJob(kind: string, label: string): Promise<void> {
    if (!state.projectId) {
      setStatus('Create a project first.');
      return;
    }
    setStatus(`${label}...`);
    try {
      const job = await api.startJob(state.projectId, kind);
      const finished = await api.pollJob(state.projectId, job.job_id);
      if (finished.state === 'failed') {
        setStatus(`${label} failed: ${finished.error?.message ?? 'unknown error'}`);
        return;
      }
      setStatus(`${label} finished.`);
      await refreshAll();
    } catch (error) {
      setStatus(`${label} failed: ${(error as Error).message}`);
    }
  }

  createButton.addEventListener('click', () => {
    void (async () => {
      const name = projectNameInput.value.trim();
      if (!name) {
        setStatus('Enter a project name.');
        return;
      }
      try {
        const project = await api.createProject(name);
        state.resetForProject(project.project_id);
        setStatus(`Project ${project.project_id} ready. Upload assets next.`);
        await refreshAll();
      } catch (error) {
        setStatus(`Could not create project: ${(error as Error).message}`);
      }
    })();
  });

  fileInput.addEventListener('change', () => {
    void (async () => {
      if (!state.projectId) {
        setStatus('Create a project first.');
        return;
      }
      const files = Array.from(fileInput.files ?? []);
      if (files.length === 0) return;
      setStatus(`Uploading ${files.length} file(s)...`);
      try {
        for (const file of files) {
          await api.uploadAsset(state.projectId, file);
        }
        setStatus(`Uploaded ${files.length} file(s). Run processing next.`);
      } catch (error) {
        setStatus(`Upload failed: ${(error as Error).message}`);
      }
    })();
  });

  processButton.addEventListener('click', () => void runPipelineJob('process_assets', 'Processing assets'));
  discoverButton.addEventListener('click', () => void runPipelineJob('discover_spaces', 'Discovering spaces'));
  describeButton.addEventListener('click', () => void runPipelineJob('describe_spaces', 'Describing spaces'));

  void explorer.refresh();
  panel.refreshForm();

  return { state, refreshAll };
}
